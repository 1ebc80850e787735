#include "zrp/cli.hpp"

int main(int argc, char** argv)
{
    return zrp::cli::run(argc, argv);
}
