#include "micromorph/cli.hpp"

int main(int argc, char** argv)
{
    return micromorph::cli::run(argc, argv);
}
