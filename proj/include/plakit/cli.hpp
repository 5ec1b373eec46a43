#pragma once

#include <plakit/device.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace plakit::cli
{

enum exit_code : int
{
  exit_ok = 0,
  exit_mismatch = 1,
  exit_usage = 2,
  exit_capacity = 3,
  exit_format = 4
};

/// Parses `nXpYmZ[:fuse|antifuse][:xor]`. Throws argument_error.
PlaProfile parse_profile( std::string_view spec );

/// Runs one subcommand. `args` excludes the program name. Diagnostics go to `err`.
int run( std::vector<std::string> const& args, std::istream& in, std::ostream& out, std::ostream& err );

} // namespace plakit::cli
