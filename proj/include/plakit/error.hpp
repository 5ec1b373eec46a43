#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plakit
{

/// Base of every error thrown by the library.
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Bad caller input: out-of-range coordinates, order mismatch, oversized tables.
class argument_error : public error
{
public:
  using error::error;
};

/// Expression syntax error. `offset` is the byte offset into the parsed text.
class parse_error : public error
{
public:
  parse_error( std::string const& message, std::size_t offset )
      : error( message + " at offset " + std::to_string( offset ) ), offset_( offset ), detail_( message )
  {
  }

  std::size_t offset() const noexcept { return offset_; }
  std::string const& detail() const noexcept { return detail_; }

private:
  std::size_t offset_;
  std::string detail_;
};

/// Malformed interchange file (fuse map, Berkeley PLA, KISS2, vectors). `line` is 1-based, 0 if unknown.
class format_error : public error
{
public:
  format_error( std::string const& message, std::size_t line = 0 )
      : error( line == 0 ? message : "line " + std::to_string( line ) + ": " + message ), line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

enum class capacity_axis
{
  terms,
  inputs,
  outputs
};

inline char const* to_string( capacity_axis axis )
{
  switch ( axis )
  {
  case capacity_axis::terms:
    return "terms";
  case capacity_axis::inputs:
    return "inputs";
  case capacity_axis::outputs:
    return "outputs";
  }
  return "?";
}

/// A design does not fit the target profile along one axis.
class capacity_error : public error
{
public:
  capacity_error( capacity_axis axis, std::size_t needed, std::size_t available )
      : error( std::string( "capacity exceeded on " ) + to_string( axis ) + " axis: needed " + std::to_string( needed ) +
               ", available " + std::to_string( available ) ),
        axis_( axis ), needed_( needed ), available_( available )
  {
  }

  capacity_axis axis() const noexcept { return axis_; }
  std::size_t needed() const noexcept { return needed_; }
  std::size_t available() const noexcept { return available_; }

private:
  capacity_axis axis_;
  std::size_t needed_;
  std::size_t available_;
};

} // namespace plakit
