//---------------------------------------------------------------------------//
//! \file main.cc
//---------------------------------------------------------------------------//
#include <iostream>
#include <string>
#include <vector>

#include "meansir/cli.hh"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return meansir::run_command(args, std::cout, std::cerr);
}
