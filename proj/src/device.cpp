#include <plakit/device.hpp>

#include <plakit/error.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace plakit
{

void PlaProfile::validate() const
{
  if ( n_inputs == 0 || n_terms == 0 || n_outputs == 0 )
    throw argument_error( "profile counts must be at least 1" );
  if ( n_inputs > max_table_vars )
    throw argument_error( "profile with " + std::to_string( n_inputs ) + " inputs exceeds the limit of " +
                          std::to_string( max_table_vars ) );
}

std::string to_string( Fault const& fault )
{
  return std::string( fault.plane == plane_kind::and_plane ? "AND" : "OR" ) + ":" + std::to_string( fault.row ) + ":" +
         std::to_string( fault.col ) + ":" + ( fault.stuck_connected ? "1" : "0" );
}

Fault parse_fault( std::string_view text )
{
  std::vector<std::string_view> parts;
  for ( std::size_t start = 0;; )
  {
    auto const colon = text.find( ':', start );
    parts.push_back( text.substr( start, colon - start ) );
    if ( colon == std::string_view::npos )
      break;
    start = colon + 1;
  }
  auto bad = [&] { return argument_error( "fault spec '" + std::string( text ) + "' is not PLANE:row:col:0|1" ); };
  if ( parts.size() != 4u )
    throw bad();

  std::string plane( parts[0] );
  std::transform( plane.begin(), plane.end(), plane.begin(), []( unsigned char c ) { return std::toupper( c ); } );
  Fault f;
  if ( plane == "AND" )
    f.plane = plane_kind::and_plane;
  else if ( plane == "OR" )
    f.plane = plane_kind::or_plane;
  else
    throw bad();

  auto number = [&]( std::string_view s ) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars( s.data(), s.data() + s.size(), v );
    if ( ec != std::errc{} || ptr != s.data() + s.size() || s.empty() )
      throw bad();
    return v;
  };
  f.row = number( parts[1] );
  f.col = number( parts[2] );
  if ( parts[3] != "0" && parts[3] != "1" )
    throw bad();
  f.stuck_connected = parts[3] == "1";
  return f;
}

/* ---------------------------------------------------------------------- */

PlaState::PlaState( PlaProfile profile ) : profile_( profile )
{
  profile_.validate();
  and_plane_.assign( profile_.n_terms * 2 * profile_.n_inputs, false );
  or_plane_.assign( profile_.n_outputs * profile_.n_terms, false );
  polarity_.assign( profile_.n_outputs, false );
}

PlaState::PlaState( PlaProfile profile, std::vector<bool> and_plane, std::vector<bool> or_plane,
                    std::vector<bool> polarity, std::vector<std::string> input_names,
                    std::vector<std::string> output_names )
    : profile_( profile ), and_plane_( std::move( and_plane ) ), or_plane_( std::move( or_plane ) ),
      polarity_( std::move( polarity ) ), input_names_( std::move( input_names ) ),
      output_names_( std::move( output_names ) )
{
  profile_.validate();
  if ( and_plane_.size() != profile_.n_terms * 2 * profile_.n_inputs )
    throw argument_error( "AND plane size does not match the profile" );
  if ( or_plane_.size() != profile_.n_outputs * profile_.n_terms )
    throw argument_error( "OR plane size does not match the profile" );
  if ( polarity_.size() != profile_.n_outputs )
    throw argument_error( "polarity vector size does not match the profile" );
  if ( !profile_.has_output_xor && std::find( polarity_.begin(), polarity_.end(), true ) != polarity_.end() )
    throw argument_error( "polarity bits set on a profile without output XOR" );
  validate_names();
}

void PlaState::validate_names() const
{
  auto check = []( std::vector<std::string> const& names, std::size_t count, char const* what ) {
    if ( names.empty() )
      return;
    if ( names.size() != count )
      throw argument_error( std::string( what ) + " name count " + std::to_string( names.size() ) +
                            " does not match " + std::to_string( count ) );
    for ( std::size_t i = 0; i < names.size(); ++i )
    {
      if ( !is_identifier( names[i] ) )
        throw argument_error( std::string( "invalid " ) + what + " name '" + names[i] + "'" );
      if ( std::find( names.begin(), names.begin() + static_cast<std::ptrdiff_t>( i ), names[i] ) !=
           names.begin() + static_cast<std::ptrdiff_t>( i ) )
        throw argument_error( std::string( "duplicate " ) + what + " name '" + names[i] + "'" );
    }
  };
  check( input_names_, profile_.n_inputs, "input" );
  check( output_names_, profile_.n_outputs, "output" );
}

std::size_t PlaState::rows( plane_kind ) const noexcept { return profile_.n_terms; }

std::size_t PlaState::cols( plane_kind plane ) const noexcept
{
  return plane == plane_kind::and_plane ? 2 * profile_.n_inputs : profile_.n_outputs;
}

std::size_t PlaState::index( plane_kind plane, std::size_t row, std::size_t col ) const
{
  if ( row >= rows( plane ) || col >= cols( plane ) )
    throw argument_error( std::string( plane == plane_kind::and_plane ? "AND" : "OR" ) + " crosspoint (" +
                          std::to_string( row ) + ", " + std::to_string( col ) + ") out of range " +
                          std::to_string( rows( plane ) ) + "x" + std::to_string( cols( plane ) ) );
  if ( plane == plane_kind::and_plane )
    return row * cols( plane ) + col;
  return col * profile_.n_terms + row;
}

bool PlaState::crosspoint( plane_kind plane, std::size_t row, std::size_t col ) const
{
  auto const i = index( plane, row, col );
  return plane == plane_kind::and_plane ? and_plane_[i] : or_plane_[i];
}

std::string PlaState::input_label( std::size_t j ) const
{
  return input_names_.empty() ? "in" + std::to_string( j ) : input_names_.at( j );
}

std::string PlaState::output_label( std::size_t o ) const
{
  return output_names_.empty() ? "out" + std::to_string( o ) : output_names_.at( o );
}

PlaState PlaState::with_crosspoint( plane_kind plane, std::size_t row, std::size_t col, bool connected ) const
{
  PlaState copy = *this;
  auto const i = index( plane, row, col );
  ( plane == plane_kind::and_plane ? copy.and_plane_ : copy.or_plane_ )[i] = connected;
  return copy;
}

PlaState PlaState::with_polarity( std::size_t output, bool complemented ) const
{
  if ( output >= profile_.n_outputs )
    throw argument_error( "output " + std::to_string( output ) + " out of range" );
  if ( complemented && !profile_.has_output_xor )
    throw argument_error( "profile has no output XOR; polarity cannot be set" );
  PlaState copy = *this;
  copy.polarity_[output] = complemented;
  return copy;
}

PlaState PlaState::with_names( std::vector<std::string> input_names, std::vector<std::string> output_names ) const
{
  PlaState copy = *this;
  copy.input_names_ = std::move( input_names );
  copy.output_names_ = std::move( output_names );
  copy.validate_names();
  return copy;
}

/* ---------------------------------------------------------------------- */

PlaState blank_device( PlaProfile const& profile )
{
  bool const closed = profile.tech == switch_tech::fuse;
  profile.validate();
  return PlaState( profile, std::vector<bool>( profile.n_terms * 2 * profile.n_inputs, closed ),
                   std::vector<bool>( profile.n_outputs * profile.n_terms, closed ),
                   std::vector<bool>( profile.n_outputs, false ) );
}

PlaState set_crosspoint( PlaState const& state, plane_kind plane, std::size_t row, std::size_t col, bool connected )
{
  return state.with_crosspoint( plane, row, col, connected );
}

PlaState set_polarity( PlaState const& state, std::size_t output, bool complemented )
{
  if ( !state.profile().has_output_xor )
    throw argument_error( "profile has no output XOR; polarity cannot be set" );
  return state.with_polarity( output, complemented );
}

PlaEvaluator::PlaEvaluator( PlaState const& state )
{
  auto const& prof = state.profile();
  auto const n = prof.n_inputs;
  terms_.resize( prof.n_terms );
  for ( std::size_t r = 0; r < prof.n_terms; ++r )
  {
    for ( std::size_t j = 0; j < n; ++j )
    {
      Row const bit = Row{ 1 } << ( n - 1 - j );
      if ( state.and_bit( r, and_column( j, false ) ) )
        terms_[r].need_one |= bit;
      if ( state.and_bit( r, and_column( j, true ) ) )
        terms_[r].need_zero |= bit;
    }
  }
  output_terms_.resize( prof.n_outputs );
  polarity_.resize( prof.n_outputs );
  for ( std::size_t o = 0; o < prof.n_outputs; ++o )
  {
    for ( std::size_t r = 0; r < prof.n_terms; ++r )
      if ( state.or_bit( r, o ) )
        output_terms_[o].push_back( r );
    polarity_[o] = state.polarity( o );
  }
}

bool PlaEvaluator::term( std::size_t r, Row row ) const noexcept
{
  // both literals connected can never be satisfied: need_one & need_zero != 0
  auto const& t = terms_[r];
  return ( row & t.need_one ) == t.need_one && ( row & t.need_zero ) == 0;
}

BitVector PlaEvaluator::operator()( Row row ) const
{
  BitVector out( output_terms_.size() );
  for ( std::size_t o = 0; o < output_terms_.size(); ++o )
  {
    bool raw = false;
    for ( auto r : output_terms_[o] )
    {
      if ( term( r, row ) )
      {
        raw = true;
        break;
      }
    }
    out[o] = raw != polarity_[o];
  }
  return out;
}

BitVector eval_pla( PlaState const& state, BitVector const& input )
{
  if ( input.size() != state.profile().n_inputs )
    throw argument_error( "input vector has " + std::to_string( input.size() ) + " bits, device has " +
                          std::to_string( state.profile().n_inputs ) + " inputs" );
  return PlaEvaluator( state )( bits_to_row( input ) );
}

PlaState inject_fault( PlaState const& state, Fault const& fault )
{
  return state.with_crosspoint( fault.plane, fault.row, fault.col, fault.stuck_connected );
}

std::optional<BitVector> find_test_vector( PlaState const& good, Fault const& fault )
{
  auto const n = good.profile().n_inputs;
  if ( n > max_table_vars )
    throw argument_error( "device too wide for exhaustive test generation" );
  PlaEvaluator const good_eval( good );
  PlaEvaluator const bad_eval( inject_fault( good, fault ) );
  for ( std::uint64_t r = 0; r < ( std::uint64_t{ 1 } << n ); ++r )
  {
    auto const row = static_cast<Row>( r );
    if ( good_eval( row ) != bad_eval( row ) )
      return row_to_bits( row, n );
  }
  return std::nullopt;
}

std::vector<Fault> enumerate_faults( PlaState const& state )
{
  std::vector<Fault> faults;
  for ( auto plane : { plane_kind::and_plane, plane_kind::or_plane } )
    for ( std::size_t r = 0; r < state.rows( plane ); ++r )
      for ( std::size_t c = 0; c < state.cols( plane ); ++c )
        for ( bool stuck : { false, true } )
          faults.push_back( { plane, r, c, stuck } );
  return faults;
}

std::vector<FaultResult> classify_faults( PlaState const& state )
{
  std::vector<FaultResult> results;
  for ( auto const& f : enumerate_faults( state ) )
    results.push_back( { f, find_test_vector( state, f ) } );
  return results;
}

/* ---------------------------------------------------------------------- */

std::string render_crosspoint_diagram( PlaState const& state )
{
  auto const& prof = state.profile();
  std::vector<std::string> and_labels, or_labels;
  for ( std::size_t j = 0; j < prof.n_inputs; ++j )
  {
    and_labels.push_back( state.input_label( j ) );
    and_labels.push_back( state.input_label( j ) + "'" );
  }
  for ( std::size_t o = 0; o < prof.n_outputs; ++o )
    or_labels.push_back( state.output_label( o ) );

  std::size_t height = 0;
  for ( auto const* labels : { &and_labels, &or_labels } )
    for ( auto const& l : *labels )
      height = std::max( height, l.size() );

  std::size_t width = std::string( prof.has_output_xor ? "pol" : "" ).size();
  width = std::max( width, ( "t" + std::to_string( prof.n_terms - 1 ) ).size() );

  auto rstrip = []( std::string s ) {
    s.erase( s.find_last_not_of( ' ' ) + 1 );
    return s;
  };
  auto pad = [width]( std::string s ) {
    s.resize( width, ' ' );
    return s;
  };

  std::ostringstream out;
  for ( std::size_t h = 0; h < height; ++h )
  {
    std::string line = pad( "" ) + " ";
    for ( auto const& l : and_labels )
      line += h < l.size() ? l[h] : ' ';
    line += "   ";
    for ( auto const& l : or_labels )
      line += h < l.size() ? l[h] : ' ';
    out << rstrip( line ) << '\n';
  }
  for ( std::size_t r = 0; r < prof.n_terms; ++r )
  {
    std::string line = pad( "t" + std::to_string( r ) ) + " ";
    for ( std::size_t c = 0; c < 2 * prof.n_inputs; ++c )
      line += state.and_bit( r, c ) ? 'X' : '.';
    line += " | ";
    for ( std::size_t o = 0; o < prof.n_outputs; ++o )
      line += state.or_bit( r, o ) ? 'X' : '.';
    out << line << '\n';
  }
  if ( prof.has_output_xor )
  {
    std::string line = pad( "pol" ) + " " + std::string( 2 * prof.n_inputs, ' ' ) + " | ";
    for ( std::size_t o = 0; o < prof.n_outputs; ++o )
      line += state.polarity( o ) ? '1' : '0';
    out << line << '\n';
  }
  return out.str();
}

} // namespace plakit
