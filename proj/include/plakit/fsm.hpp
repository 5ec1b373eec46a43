#pragma once

#include <plakit/device.hpp>
#include <plakit/fit.hpp>
#include <plakit/minimize.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace plakit
{

struct Transition
{
  Cube input;  ///< over the machine inputs
  std::size_t from = 0;
  std::size_t to = 0;
  BitVector outputs;
};

/// Symbolic state-transition table. Transitions carry outputs (Mealy); a Moore
/// machine gives every transition out of a state the same outputs.
/// (state, input) pairs matched by no transition hold the state and drive all
/// outputs low.
struct Fsm
{
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<std::string> states;  ///< declaration (first appearance) order
  std::size_t reset = 0;
  std::vector<Transition> transitions;

  /// Throws argument_error on bad widths or indices, duplicate transitions, or
  /// overlapping input cubes out of one state.
  void validate() const;
  /// Index of the transition taken from `state` on `input`, if any.
  std::optional<std::size_t> find_transition( std::size_t state, BitVector const& input ) const;
};

struct Kiss2Options
{
  /// Reject machines with unspecified (state, input) combinations.
  bool strict = false;
};

/// KISS2 subset: `.i .o .s .p .r .e` and lines `input current next outputs`.
/// Inputs are named x0.., outputs y0... Throws format_error.
Fsm parse_kiss2( std::string_view text, Kiss2Options const& options = {} );
std::string write_kiss2( Fsm const& fsm );

/// Binary state codes: the reset state gets 0, the others 1, 2, ... in
/// declaration order. A code is written big-endian across the state bits.
struct StateEncoding
{
  std::size_t bits = 0;
  std::vector<std::string> names;  ///< by state index
  std::vector<Row> codes;          ///< by state index

  std::optional<std::size_t> state_of( Row code ) const;
  std::string code_string( Row code ) const;
};

StateEncoding encode_states( Fsm const& fsm );

/// Variable order of controller covers: state bits s0.. (s0 most
/// significant) followed by the machine inputs.
VarOrder controller_inputs( Fsm const& fsm, StateEncoding const& encoding );

struct ControllerCovers
{
  /// Outputs: next-state bits n0.. then the machine outputs.
  MultiOutputCover cover;
  /// Rows whose state bits match no declared code.
  std::vector<Row> dc_rows;
};

ControllerCovers fsm_to_covers( Fsm const& fsm, StateEncoding const& encoding );

/// Widths needed to drive a controller device from outside.
struct ControllerLayout
{
  StateEncoding encoding;
  std::size_t num_inputs = 0;
  std::size_t num_outputs = 0;
};

/// Device inputs are (state bits ++ machine inputs); outputs are
/// (next-state bits ++ machine outputs).
struct ControllerImage
{
  PlaState state;
  ControllerLayout layout;
};

struct ControllerOptions
{
  bool minimize = false;
};

struct ControllerResult
{
  ControllerImage image;
  FitReport report;
};

/// Throws capacity_error when state bits plus inputs or outputs exceed the profile.
ControllerResult synthesize_controller( Fsm const& fsm, PlaProfile const& profile,
                                        ControllerOptions const& options = {} );

struct TraceStep
{
  Row state_code = 0;
  BitVector outputs;
};

/// Registers start at code 0. Each cycle evaluates the device at
/// (state ++ input), records the current state and outputs, then latches.
std::vector<TraceStep> simulate_controller( ControllerImage const& image, std::vector<BitVector> const& inputs );

/// One `cycle state_code outputs` line per step; empty fields print as `-`.
std::string format_trace( std::vector<TraceStep> const& trace, StateEncoding const& encoding );

/// Sidecar describing how a controller fuse map is wired:
///
///   PLAENC 1
///   BITS <b>
///   INPUTS <k>
///   OUTPUTS <q>
///   STATE <name> <code>     one per state
///   END
std::string emit_encoding( ControllerLayout const& layout );
ControllerLayout parse_encoding( std::string_view text );

} // namespace plakit
