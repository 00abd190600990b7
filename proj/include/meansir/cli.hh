//---------------------------------------------------------------------------//
//! \file meansir/cli.hh
//! Command-line front end.
//---------------------------------------------------------------------------//
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace meansir
{
//---------------------------------------------------------------------------//
enum ExitCode : int
{
    exit_ok = 0,
    exit_failure = 1,  //!< I/O or unexpected internal failure
    exit_usage = 2,
    exit_domain = 3,
};

/*!
 * Run one command; \c args excludes the program name.
 *
 * Subcommands: analytic, simulate, sweep, optimize, fig1 .. fig4.
 */
int run_command(std::vector<std::string> const& args,
                std::ostream& out,
                std::ostream& err);

//---------------------------------------------------------------------------//
}  // namespace meansir
