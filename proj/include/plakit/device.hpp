#pragma once

#include <plakit/logic.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace plakit
{

enum class switch_tech
{
  fuse,     ///< starts connected, programming blows the link
  antifuse  ///< starts open, programming closes the link
};

/// Device dimensions: n inputs, p product-term rows, m output columns.
struct PlaProfile
{
  std::size_t n_inputs = 1;
  std::size_t n_terms = 1;
  std::size_t n_outputs = 1;
  switch_tech tech = switch_tech::fuse;
  bool has_output_xor = false;

  /// Throws argument_error unless all counts are >= 1 and n_inputs <= max_table_vars.
  void validate() const;

  friend bool operator==( PlaProfile const&, PlaProfile const& ) = default;
};

enum class plane_kind
{
  and_plane,
  or_plane
};

/// AND-plane column of an input literal: 2j for the true literal, 2j+1 for the complement.
constexpr std::size_t and_column( std::size_t input, bool complemented ) noexcept
{
  return 2 * input + ( complemented ? 1u : 0u );
}

/// Crosspoint addressing is (term row, column) in both planes. An AND-plane
/// column is a literal column; an OR-plane column is an output.
struct Fault
{
  plane_kind plane = plane_kind::and_plane;
  std::size_t row = 0;
  std::size_t col = 0;
  bool stuck_connected = false;

  friend bool operator==( Fault const&, Fault const& ) = default;
};

/// "AND:r:c:1" style text, the same syntax parse_fault accepts.
std::string to_string( Fault const& fault );
Fault parse_fault( std::string_view text );

/// Connectivity of a programmed PLA. Immutable; the programming functions
/// return modified copies.
class PlaState
{
public:
  /// All crosspoints open, polarity zero, no names.
  explicit PlaState( PlaProfile profile );

  /// `and_plane` is p rows of 2n bits, `or_plane` is m rows (one per output)
  /// of p bits, both row-major. Names may be empty (unnamed) or exactly n / m long.
  PlaState( PlaProfile profile, std::vector<bool> and_plane, std::vector<bool> or_plane, std::vector<bool> polarity,
            std::vector<std::string> input_names = {}, std::vector<std::string> output_names = {} );

  PlaProfile const& profile() const noexcept { return profile_; }

  std::size_t rows( plane_kind plane ) const noexcept;
  std::size_t cols( plane_kind plane ) const noexcept;

  bool crosspoint( plane_kind plane, std::size_t row, std::size_t col ) const;
  bool and_bit( std::size_t term, std::size_t column ) const { return crosspoint( plane_kind::and_plane, term, column ); }
  bool or_bit( std::size_t term, std::size_t output ) const { return crosspoint( plane_kind::or_plane, term, output ); }
  bool polarity( std::size_t output ) const { return polarity_.at( output ); }

  std::vector<std::string> const& input_names() const noexcept { return input_names_; }
  std::vector<std::string> const& output_names() const noexcept { return output_names_; }
  /// Name of input j / output o, falling back to "in<j>" / "out<o>".
  std::string input_label( std::size_t j ) const;
  std::string output_label( std::size_t o ) const;

  PlaState with_crosspoint( plane_kind plane, std::size_t row, std::size_t col, bool connected ) const;
  PlaState with_polarity( std::size_t output, bool complemented ) const;
  PlaState with_names( std::vector<std::string> input_names, std::vector<std::string> output_names ) const;

  friend bool operator==( PlaState const&, PlaState const& ) = default;

private:
  std::size_t index( plane_kind plane, std::size_t row, std::size_t col ) const;
  void validate_names() const;

  PlaProfile profile_;
  std::vector<bool> and_plane_;
  std::vector<bool> or_plane_;
  std::vector<bool> polarity_;
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
};

/// Unprogrammed device: fuse technology has every crosspoint connected,
/// antifuse has every crosspoint open.
PlaState blank_device( PlaProfile const& profile );

PlaState set_crosspoint( PlaState const& state, plane_kind plane, std::size_t row, std::size_t col, bool connected );

/// Throws argument_error if the profile has no output XOR.
PlaState set_polarity( PlaState const& state, std::size_t output, bool complemented );

/// Precomputed evaluator for repeated evaluation by row index.
class PlaEvaluator
{
public:
  explicit PlaEvaluator( PlaState const& state );

  BitVector operator()( Row row ) const;
  bool term( std::size_t r, Row row ) const noexcept;

private:
  struct TermMask
  {
    Row need_one = 0;
    Row need_zero = 0;
  };

  std::vector<TermMask> terms_;
  std::vector<std::vector<std::size_t>> output_terms_;
  std::vector<bool> polarity_;
};

/// Outputs for one input vector. A term with no connections is 1, a term
/// connected to both literals of an input is 0, an output with no
/// connections is 0 before the polarity XOR.
BitVector eval_pla( PlaState const& state, BitVector const& input );

/// Copy of `state` with the faulted crosspoint forced.
PlaState inject_fault( PlaState const& state, Fault const& fault );

/// Lowest input vector on which the good and faulted devices differ.
std::optional<BitVector> find_test_vector( PlaState const& good, Fault const& fault );

/// Every crosspoint of both planes, stuck open then stuck closed, AND plane first.
std::vector<Fault> enumerate_faults( PlaState const& state );

struct FaultResult
{
  Fault fault;
  std::optional<BitVector> test_vector;
};

std::vector<FaultResult> classify_faults( PlaState const& state );

/// ASCII crosspoint grid: vertical column labels, one `t<r>` line per AND
/// row with `X` for connected and `.` for open, the OR plane after ` | `,
/// and a `pol` line when the device has output XORs.
std::string render_crosspoint_diagram( PlaState const& state );

} // namespace plakit
