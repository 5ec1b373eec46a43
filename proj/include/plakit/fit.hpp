#pragma once

#include <plakit/device.hpp>
#include <plakit/expr.hpp>
#include <plakit/minimize.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plakit
{

struct FitReport
{
  std::size_t terms_used = 0;
  std::size_t terms_available = 0;
  std::size_t outputs_used = 0;
  std::size_t inputs_used = 0;
  /// AND rows feeding each output, in selection order.
  std::vector<std::vector<std::size_t>> output_rows;
  /// Rows driving more than one output.
  std::size_t shared_terms = 0;
  /// Free-form pipeline log lines.
  std::vector<std::string> log;
};

/// Multi-line human-readable summary, used as the compile log.
std::string to_string( FitReport const& report );

struct FitResult
{
  PlaState state;
  FitReport report;
};

/// Places pool cube r on AND row r and connects each output to the rows of
/// its selection. Unused rows and columns stay open; polarity is zero.
/// Throws capacity_error (inputs, then outputs, then terms) when the cover
/// does not fit.
FitResult fit( MultiOutputCover const& cover, PlaProfile const& profile );

/// Text fuse map:
///
///   PLAFUSE 1
///   TECH fuse|antifuse XOR 0|1
///   DIM <n> <p> <m>
///   ILB <n names>        (optional)
///   OB <m names>         (optional)
///   AND                  followed by p lines of 2n bits, columns in0 in0' in1 in1' ...
///   OR                   followed by m lines of p bits, one per output
///   POL <m bits>         (only when XOR 1)
///   END
///
/// A stored 1 is a connected crosspoint: an intact fuse or a programmed antifuse.
std::string emit_fusemap( PlaState const& state );
/// Accepts LF or CRLF. Throws format_error.
PlaState parse_fusemap( std::string_view text );

/// Reads the Berkeley `.pla` subset (`.i .o .p .ilb .ob .type f .e`). Input
/// characters 0/1/- and output characters 0/1. Identical input cubes share
/// one pool term. A `.p` count mismatch is a warning, or an error when strict.
MultiOutputCover read_berkeley_pla( std::string_view text, bool strict = false,
                                    std::vector<std::string>* warnings = nullptr );
std::string write_berkeley_pla( MultiOutputCover const& cover );

struct CompileOptions
{
  bool minimize = false;
  /// Per output in equation order; a set bit compiles the complement and
  /// sets the output XOR. Shorter than the equation list means zero.
  std::vector<bool> polarity;
  /// Input order; defaults to first appearance across the equations.
  std::optional<VarOrder> order;
};

/// Equations to netlist: truth table, canonical SOP, optional minimization,
/// term sharing. Outputs with polarity set are built from the complement.
MultiOutputCover synthesize( std::vector<Equation> const& equations, CompileOptions const& options,
                             std::vector<std::string>* log = nullptr );

struct CompileResult
{
  PlaState state;
  FitReport report;
  MultiOutputCover netlist;
};

CompileResult compile( std::vector<Equation> const& equations, PlaProfile const& profile,
                       CompileOptions const& options = {} );

struct Mismatch
{
  BitVector input;
  std::size_t output = 0;
  bool expected = false;
  bool actual = false;
};

/// Exhaustive comparison of a device against equations over every device
/// input vector. Inputs and outputs are matched by name when the device
/// carries names, by position otherwise.
std::optional<Mismatch> verify_device( PlaState const& state, std::vector<Equation> const& equations );

/// Exhaustive comparison of a device against a multi-output cover, inputs
/// and outputs matched by position.
std::optional<Mismatch> verify_device( PlaState const& state, MultiOutputCover const& cover );

} // namespace plakit
