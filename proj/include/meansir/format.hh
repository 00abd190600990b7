//---------------------------------------------------------------------------//
//! \file meansir/format.hh
//---------------------------------------------------------------------------//
#pragma once

#include <charconv>
#include <string>

namespace meansir
{
//! Shortest decimal text that parses back to exactly the same double
inline std::string shortest(double v)
{
    char buf[32];
    auto const r = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, r.ptr);
}

}  // namespace meansir
