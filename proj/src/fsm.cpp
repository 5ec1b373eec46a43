#include <plakit/fsm.hpp>

#include <plakit/error.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <sstream>

namespace plakit
{

namespace
{

std::size_t state_bits( std::size_t num_states )
{
  return num_states <= 1 ? 0 : static_cast<std::size_t>( std::bit_width( num_states - 1 ) );
}

std::vector<std::string_view> fields( std::string_view line )
{
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while ( i < line.size() )
  {
    while ( i < line.size() && std::isspace( static_cast<unsigned char>( line[i] ) ) )
      ++i;
    auto const start = i;
    while ( i < line.size() && !std::isspace( static_cast<unsigned char>( line[i] ) ) )
      ++i;
    if ( i > start )
      out.push_back( line.substr( start, i - start ) );
  }
  return out;
}

std::size_t count_arg( std::vector<std::string_view> const& f, std::size_t line )
{
  if ( f.size() != 2u )
    throw format_error( std::string( f[0] ) + " takes one argument", line );
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars( f[1].data(), f[1].data() + f[1].size(), v );
  if ( ec != std::errc{} || ptr != f[1].data() + f[1].size() )
    throw format_error( "malformed count '" + std::string( f[1] ) + "'", line );
  return v;
}

std::vector<Cube> uncovered_inputs( Fsm const& fsm, std::size_t state )
{
  std::vector<Cube> rest{ Cube( fsm.inputs.size() ) };
  for ( auto const& t : fsm.transitions )
  {
    if ( t.from != state )
      continue;
    std::vector<Cube> next;
    for ( auto const& r : rest )
      for ( auto& piece : sharp( r, t.input ) )
        next.push_back( std::move( piece ) );
    rest = std::move( next );
  }
  return rest;
}

std::vector<Literal> code_literals( Row code, std::size_t bits )
{
  std::vector<Literal> lits;
  for ( std::size_t i = 0; i < bits; ++i )
    lits.push_back( ( code >> ( bits - 1 - i ) ) & 1u ? Literal::pos : Literal::neg );
  return lits;
}

} // namespace

void Fsm::validate() const
{
  if ( states.empty() )
    throw argument_error( "machine has no states" );
  if ( reset >= states.size() )
    throw argument_error( "reset state index out of range" );
  for ( std::size_t i = 0; i < transitions.size(); ++i )
  {
    auto const& t = transitions[i];
    if ( t.input.size() != inputs.size() )
      throw argument_error( "transition " + std::to_string( i ) + " input width mismatch" );
    if ( t.outputs.size() != outputs.size() )
      throw argument_error( "transition " + std::to_string( i ) + " output width mismatch" );
    if ( t.from >= states.size() || t.to >= states.size() )
      throw argument_error( "transition " + std::to_string( i ) + " references an undeclared state" );
    for ( std::size_t j = 0; j < i; ++j )
    {
      auto const& u = transitions[j];
      if ( u.from != t.from || !u.input.intersects( t.input ) )
        continue;
      if ( u.input == t.input )
        throw argument_error( "duplicate transition from state " + states[t.from] + " on input " +
                              t.input.to_string() );
      throw argument_error( "overlapping input cubes " + u.input.to_string() + " and " + t.input.to_string() +
                            " from state " + states[t.from] );
    }
  }
}

std::optional<std::size_t> Fsm::find_transition( std::size_t state, BitVector const& input ) const
{
  for ( std::size_t i = 0; i < transitions.size(); ++i )
    if ( transitions[i].from == state && transitions[i].input.eval( input ) )
      return i;
  return std::nullopt;
}

Fsm parse_kiss2( std::string_view text, Kiss2Options const& options )
{
  std::optional<std::size_t> n_in, n_out, n_states, n_terms;
  std::optional<std::string> reset_name;
  std::size_t reset_line = 0;

  struct RawTransition
  {
    std::size_t line;
    std::string input, from, to, outputs;
  };
  std::vector<RawTransition> raw;

  std::size_t line_no = 0;
  while ( !text.empty() )
  {
    ++line_no;
    auto const nl = text.find( '\n' );
    auto line = text.substr( 0, nl );
    text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );
    line = line.substr( 0, line.find( '#' ) );
    auto f = fields( line );
    if ( f.empty() )
      continue;

    if ( f[0].front() == '.' )
    {
      if ( f[0] == ".i" )
        n_in = count_arg( f, line_no );
      else if ( f[0] == ".o" )
        n_out = count_arg( f, line_no );
      else if ( f[0] == ".s" )
        n_states = count_arg( f, line_no );
      else if ( f[0] == ".p" )
        n_terms = count_arg( f, line_no );
      else if ( f[0] == ".r" )
      {
        if ( f.size() != 2u )
          throw format_error( ".r takes one state name", line_no );
        reset_name = std::string( f[1] );
        reset_line = line_no;
      }
      else if ( f[0] == ".e" || f[0] == ".end" )
        break;
      else
        throw format_error( "unknown directive '" + std::string( f[0] ) + "'", line_no );
      continue;
    }

    if ( !n_in || !n_out )
      throw format_error( "transition before .i and .o", line_no );
    std::size_t const expected = ( *n_in > 0 ? 1u : 0u ) + 2u + ( *n_out > 0 ? 1u : 0u );
    if ( f.size() != expected )
      throw format_error( "expected " + std::to_string( expected ) + " fields, found " + std::to_string( f.size() ),
                          line_no );
    std::size_t k = 0;
    RawTransition t{ line_no, {}, {}, {}, {} };
    if ( *n_in > 0 )
      t.input = f[k++];
    t.from = f[k++];
    t.to = f[k++];
    if ( *n_out > 0 )
      t.outputs = f[k++];
    if ( t.input.size() != *n_in )
      throw format_error( "input field '" + t.input + "' is not " + std::to_string( *n_in ) + " wide", line_no );
    if ( t.outputs.size() != *n_out )
      throw format_error( "output field '" + t.outputs + "' is not " + std::to_string( *n_out ) + " wide", line_no );
    if ( t.input.find_first_not_of( "01-" ) != std::string::npos )
      throw format_error( "illegal input character in '" + t.input + "'", line_no );
    if ( t.outputs.find_first_not_of( "01" ) != std::string::npos )
      throw format_error( "output field '" + t.outputs + "' must use only 0 and 1", line_no );
    if ( t.to == "*" )
      throw format_error( "unspecified next state '*' is not supported", line_no );
    raw.push_back( std::move( t ) );
  }

  if ( !n_in )
    throw format_error( "missing .i directive" );
  if ( !n_out )
    throw format_error( "missing .o directive" );
  if ( n_terms && *n_terms != raw.size() )
    throw format_error( ".p declares " + std::to_string( *n_terms ) + " transitions, found " +
                        std::to_string( raw.size() ) );

  Fsm fsm;
  for ( std::size_t j = 0; j < *n_in; ++j )
    fsm.inputs.push_back( "x" + std::to_string( j ) );
  for ( std::size_t o = 0; o < *n_out; ++o )
    fsm.outputs.push_back( "y" + std::to_string( o ) );

  auto state_index = [&fsm]( std::string const& name ) {
    auto it = std::find( fsm.states.begin(), fsm.states.end(), name );
    if ( it != fsm.states.end() )
      return static_cast<std::size_t>( it - fsm.states.begin() );
    fsm.states.push_back( name );
    return fsm.states.size() - 1;
  };
  for ( auto const& t : raw )
  {
    Transition tr;
    tr.input = Cube::parse( t.input );
    tr.from = state_index( t.from );
    tr.to = state_index( t.to );
    for ( char c : t.outputs )
      tr.outputs.push_back( c == '1' );

    for ( auto const& prev : fsm.transitions )
    {
      if ( prev.from != tr.from || !prev.input.intersects( tr.input ) )
        continue;
      if ( prev.input == tr.input )
        throw format_error( "duplicate transition from " + t.from + " on " + t.input, t.line );
      throw format_error( "input cube " + t.input + " overlaps " + prev.input.to_string() + " from state " + t.from,
                          t.line );
    }
    fsm.transitions.push_back( std::move( tr ) );
  }

  if ( fsm.states.empty() )
    throw format_error( "machine has no transitions" );
  if ( n_states && *n_states != fsm.states.size() )
    throw format_error( ".s declares " + std::to_string( *n_states ) + " states, found " +
                        std::to_string( fsm.states.size() ) );
  if ( reset_name )
  {
    auto it = std::find( fsm.states.begin(), fsm.states.end(), *reset_name );
    if ( it == fsm.states.end() )
      throw format_error( "reset state '" + *reset_name + "' does not appear in any transition", reset_line );
    fsm.reset = static_cast<std::size_t>( it - fsm.states.begin() );
  }

  if ( options.strict )
  {
    for ( std::size_t s = 0; s < fsm.states.size(); ++s )
    {
      auto const gaps = uncovered_inputs( fsm, s );
      if ( !gaps.empty() )
        throw format_error( "state " + fsm.states[s] + " has no transition for input " + gaps.front().to_string() );
    }
  }
  return fsm;
}

std::string write_kiss2( Fsm const& fsm )
{
  std::ostringstream out;
  out << ".i " << fsm.inputs.size() << '\n';
  out << ".o " << fsm.outputs.size() << '\n';
  out << ".p " << fsm.transitions.size() << '\n';
  out << ".s " << fsm.states.size() << '\n';
  out << ".r " << fsm.states.at( fsm.reset ) << '\n';
  for ( auto const& t : fsm.transitions )
  {
    if ( !fsm.inputs.empty() )
      out << t.input.to_string() << ' ';
    out << fsm.states[t.from] << ' ' << fsm.states[t.to];
    if ( !fsm.outputs.empty() )
      out << ' ' << to_string( t.outputs );
    out << '\n';
  }
  out << ".e\n";
  return out.str();
}

/* ---------------------------------------------------------------------- */

std::optional<std::size_t> StateEncoding::state_of( Row code ) const
{
  auto it = std::find( codes.begin(), codes.end(), code );
  if ( it == codes.end() )
    return std::nullopt;
  return static_cast<std::size_t>( it - codes.begin() );
}

std::string StateEncoding::code_string( Row code ) const
{
  if ( bits == 0 )
    return "-";
  return to_string( row_to_bits( code, bits ) );
}

StateEncoding encode_states( Fsm const& fsm )
{
  fsm.validate();
  StateEncoding enc;
  enc.bits = state_bits( fsm.states.size() );
  enc.names = fsm.states;
  enc.codes.resize( fsm.states.size() );
  Row next = 1;
  for ( std::size_t s = 0; s < fsm.states.size(); ++s )
    enc.codes[s] = s == fsm.reset ? 0 : next++;
  return enc;
}

VarOrder controller_inputs( Fsm const& fsm, StateEncoding const& encoding )
{
  std::vector<std::string> names;
  for ( std::size_t i = 0; i < encoding.bits; ++i )
    names.push_back( "s" + std::to_string( i ) );
  names.insert( names.end(), fsm.inputs.begin(), fsm.inputs.end() );
  return VarOrder( std::move( names ) );
}

ControllerCovers fsm_to_covers( Fsm const& fsm, StateEncoding const& encoding )
{
  fsm.validate();
  auto const b = encoding.bits;
  auto const k = fsm.inputs.size();
  auto const q = fsm.outputs.size();
  auto const order = controller_inputs( fsm, encoding );
  if ( b + k > max_table_vars )
    throw argument_error( "controller needs " + std::to_string( b + k ) + " inputs, above the limit of " +
                          std::to_string( max_table_vars ) );

  std::vector<std::vector<Cube>> columns( b + q );
  auto emit = [&]( Row from_code, Cube const& input, Row next_code, BitVector const* outs ) {
    auto lits = code_literals( from_code, b );
    lits.insert( lits.end(), input.literals().begin(), input.literals().end() );
    Cube const cube( std::move( lits ) );
    for ( std::size_t i = 0; i < b; ++i )
      if ( ( next_code >> ( b - 1 - i ) ) & 1u )
        columns[i].push_back( cube );
    if ( outs )
      for ( std::size_t o = 0; o < q; ++o )
        if ( ( *outs )[o] )
          columns[b + o].push_back( cube );
  };

  for ( auto const& t : fsm.transitions )
    emit( encoding.codes[t.from], t.input, encoding.codes[t.to], &t.outputs );
  for ( std::size_t s = 0; s < fsm.states.size(); ++s )
    for ( auto const& gap : uncovered_inputs( fsm, s ) )
      emit( encoding.codes[s], gap, encoding.codes[s], nullptr );

  std::vector<NamedCover> named;
  for ( std::size_t i = 0; i < b; ++i )
    named.push_back( { "n" + std::to_string( i ), Cover( order, columns[i] ) } );
  for ( std::size_t o = 0; o < q; ++o )
    named.push_back( { fsm.outputs[o], Cover( order, columns[b + o] ) } );

  ControllerCovers result;
  result.cover = named.empty() ? MultiOutputCover( order, {}, {} ) : share_terms( named );
  for ( Row code = static_cast<Row>( fsm.states.size() ); code < ( Row{ 1 } << b ); ++code )
    for ( Row x = 0; x < ( Row{ 1 } << k ); ++x )
      result.dc_rows.push_back( ( code << k ) | x );
  return result;
}

ControllerResult synthesize_controller( Fsm const& fsm, PlaProfile const& profile, ControllerOptions const& options )
{
  profile.validate();
  auto const encoding = encode_states( fsm );
  auto const b = encoding.bits;
  if ( b + fsm.inputs.size() > profile.n_inputs )
    throw capacity_error( capacity_axis::inputs, b + fsm.inputs.size(), profile.n_inputs );
  if ( b + fsm.outputs.size() > profile.n_outputs )
    throw capacity_error( capacity_axis::outputs, b + fsm.outputs.size(), profile.n_outputs );

  auto covers = fsm_to_covers( fsm, encoding );
  std::vector<std::string> log;
  auto netlist = covers.cover;
  if ( options.minimize )
  {
    std::vector<NamedCover> minimized;
    for ( std::size_t o = 0; o < netlist.outputs().size(); ++o )
      minimized.push_back( { netlist.outputs()[o].name, minimize( netlist.output_cover( o ), covers.dc_rows ) } );
    auto candidate = minimized.empty() ? netlist : share_terms( minimized );
    log.push_back( "minimize: " + std::to_string( netlist.pool().size() ) + " -> " +
                   std::to_string( candidate.pool().size() ) + " terms, " + std::to_string( covers.dc_rows.size() ) +
                   " don't-care rows" );
    if ( candidate.pool().size() <= netlist.pool().size() )
      netlist = std::move( candidate );
    else
      log.push_back( "minimize: shared pool grew, keeping the unminimized netlist" );
  }

  auto [state, report] = fit( netlist, profile );
  report.log.insert( report.log.begin(), log.begin(), log.end() );
  ControllerLayout layout{ encoding, fsm.inputs.size(), fsm.outputs.size() };
  return { ControllerImage{ std::move( state ), std::move( layout ) }, std::move( report ) };
}

/* ---------------------------------------------------------------------- */

std::vector<TraceStep> simulate_controller( ControllerImage const& image, std::vector<BitVector> const& inputs )
{
  auto const& layout = image.layout;
  auto const b = layout.encoding.bits;
  auto const k = layout.num_inputs;
  auto const q = layout.num_outputs;
  auto const& prof = image.state.profile();
  if ( b + k > prof.n_inputs || b + q > prof.n_outputs )
    throw argument_error( "controller layout does not fit the device" );

  PlaEvaluator const device( image.state );
  auto const spare = prof.n_inputs - ( b + k );
  Row code = 0;
  std::vector<TraceStep> trace;
  for ( auto const& in : inputs )
  {
    if ( in.size() != k )
      throw argument_error( "input vector has " + std::to_string( in.size() ) + " bits, controller expects " +
                            std::to_string( k ) );
    Row const row = ( ( code << k ) | bits_to_row( in ) ) << spare;
    auto const out = device( row );
    TraceStep step{ code, BitVector( out.begin() + static_cast<std::ptrdiff_t>( b ),
                                     out.begin() + static_cast<std::ptrdiff_t>( b + q ) ) };
    trace.push_back( std::move( step ) );
    code = bits_to_row( BitVector( out.begin(), out.begin() + static_cast<std::ptrdiff_t>( b ) ) );
  }
  return trace;
}

std::string format_trace( std::vector<TraceStep> const& trace, StateEncoding const& encoding )
{
  std::ostringstream out;
  for ( std::size_t c = 0; c < trace.size(); ++c )
  {
    auto const& outs = trace[c].outputs;
    out << c << ' ' << encoding.code_string( trace[c].state_code ) << ' ' << ( outs.empty() ? "-" : to_string( outs ) )
        << '\n';
  }
  return out.str();
}

std::string emit_encoding( ControllerLayout const& layout )
{
  std::ostringstream out;
  out << "PLAENC 1\n";
  out << "BITS " << layout.encoding.bits << '\n';
  out << "INPUTS " << layout.num_inputs << '\n';
  out << "OUTPUTS " << layout.num_outputs << '\n';
  for ( std::size_t s = 0; s < layout.encoding.names.size(); ++s )
    out << "STATE " << layout.encoding.names[s] << ' ' << layout.encoding.code_string( layout.encoding.codes[s] )
        << '\n';
  out << "END\n";
  return out.str();
}

ControllerLayout parse_encoding( std::string_view text )
{
  ControllerLayout layout;
  std::size_t line_no = 0;
  bool seen_magic = false, seen_end = false;
  std::optional<std::size_t> bits, inputs, outputs;
  while ( !text.empty() )
  {
    ++line_no;
    auto const nl = text.find( '\n' );
    auto f = fields( text.substr( 0, nl ) );
    text = nl == std::string_view::npos ? std::string_view{} : text.substr( nl + 1 );
    if ( f.empty() )
      continue;
    if ( seen_end )
      throw format_error( "content after END", line_no );
    if ( !seen_magic )
    {
      if ( f.size() != 2u || f[0] != "PLAENC" || f[1] != "1" )
        throw format_error( "malformed header: expected 'PLAENC 1'", line_no );
      seen_magic = true;
      continue;
    }
    if ( f[0] == "BITS" )
      bits = count_arg( f, line_no );
    else if ( f[0] == "INPUTS" )
      inputs = count_arg( f, line_no );
    else if ( f[0] == "OUTPUTS" )
      outputs = count_arg( f, line_no );
    else if ( f[0] == "STATE" )
    {
      if ( !bits )
        throw format_error( "STATE before BITS", line_no );
      if ( f.size() != 3u )
        throw format_error( "expected 'STATE <name> <code>'", line_no );
      Row code = 0;
      if ( *bits == 0 )
      {
        if ( f[2] != "-" )
          throw format_error( "zero-bit encoding uses '-' as the code", line_no );
      }
      else
      {
        if ( f[2].size() != *bits || f[2].find_first_not_of( "01" ) != std::string_view::npos )
          throw format_error( "state code '" + std::string( f[2] ) + "' is not " + std::to_string( *bits ) +
                                  " binary digits",
                              line_no );
        for ( char c : f[2] )
          code = ( code << 1 ) | ( c == '1' ? 1u : 0u );
      }
      if ( layout.encoding.state_of( code ) )
        throw format_error( "duplicate state code " + std::string( f[2] ), line_no );
      layout.encoding.names.emplace_back( f[1] );
      layout.encoding.codes.push_back( code );
    }
    else if ( f[0] == "END" )
      seen_end = true;
    else
      throw format_error( "unknown record '" + std::string( f[0] ) + "'", line_no );
  }
  if ( !seen_magic || !seen_end )
    throw format_error( "truncated encoding file" );
  if ( !bits || !inputs || !outputs )
    throw format_error( "encoding file lacks BITS, INPUTS or OUTPUTS" );
  if ( layout.encoding.names.empty() )
    throw format_error( "encoding file lists no states" );
  if ( !layout.encoding.state_of( 0 ) )
    throw format_error( "no state has the reset code 0" );
  layout.encoding.bits = *bits;
  layout.num_inputs = *inputs;
  layout.num_outputs = *outputs;
  return layout;
}

} // namespace plakit
