#include "dilation/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return dilation::cli::run(argc, argv, std::cout, std::cerr);
}
