#include <plakit/fit.hpp>

#include <plakit/error.hpp>

#include <algorithm>
#include <sstream>

namespace plakit
{

namespace
{

std::vector<std::string> padded_names( std::vector<std::string> names, std::size_t count, std::string const& prefix )
{
  for ( std::size_t j = names.size(); j < count; ++j )
  {
    std::string candidate = prefix + std::to_string( j );
    while ( std::find( names.begin(), names.end(), candidate ) != names.end() )
      candidate += '_';
    names.push_back( std::move( candidate ) );
  }
  return names;
}

} // namespace

std::string to_string( FitReport const& report )
{
  std::ostringstream out;
  for ( auto const& line : report.log )
    out << line << '\n';
  out << "inputs used:  " << report.inputs_used << '\n';
  out << "outputs used: " << report.outputs_used << '\n';
  out << "terms used:   " << report.terms_used << " of " << report.terms_available << '\n';
  out << "shared terms: " << report.shared_terms << '\n';
  for ( std::size_t o = 0; o < report.output_rows.size(); ++o )
  {
    out << "output " << o << " rows:";
    for ( auto r : report.output_rows[o] )
      out << ' ' << r;
    out << '\n';
  }
  return out.str();
}

FitResult fit( MultiOutputCover const& cover, PlaProfile const& profile )
{
  profile.validate();
  auto const n_vars = cover.order().size();
  if ( n_vars > profile.n_inputs )
    throw capacity_error( capacity_axis::inputs, n_vars, profile.n_inputs );
  if ( cover.outputs().size() > profile.n_outputs )
    throw capacity_error( capacity_axis::outputs, cover.outputs().size(), profile.n_outputs );
  if ( cover.pool().size() > profile.n_terms )
    throw capacity_error( capacity_axis::terms, cover.pool().size(), profile.n_terms );

  auto const n = profile.n_inputs;
  auto const p = profile.n_terms;
  std::vector<bool> and_plane( p * 2 * n, false );
  std::vector<bool> or_plane( profile.n_outputs * p, false );

  for ( std::size_t r = 0; r < cover.pool().size(); ++r )
  {
    auto const& cube = cover.pool()[r];
    for ( std::size_t j = 0; j < n_vars; ++j )
    {
      if ( cube[j] == Literal::pos )
        and_plane[r * 2 * n + and_column( j, false )] = true;
      else if ( cube[j] == Literal::neg )
        and_plane[r * 2 * n + and_column( j, true )] = true;
    }
  }

  FitReport report;
  report.terms_used = cover.pool().size();
  report.terms_available = p;
  report.outputs_used = cover.outputs().size();
  report.inputs_used = n_vars;

  std::vector<std::size_t> fanout( cover.pool().size(), 0 );
  std::vector<std::string> output_names;
  for ( std::size_t o = 0; o < cover.outputs().size(); ++o )
  {
    auto const& sel = cover.outputs()[o];
    output_names.push_back( sel.name );
    for ( auto r : sel.terms )
    {
      or_plane[o * p + r] = true;
      ++fanout[r];
    }
    report.output_rows.push_back( sel.terms );
  }
  report.shared_terms =
      static_cast<std::size_t>( std::count_if( fanout.begin(), fanout.end(), []( std::size_t f ) { return f > 1; } ) );

  PlaState state( profile, std::move( and_plane ), std::move( or_plane ), std::vector<bool>( profile.n_outputs, false ),
                  padded_names( cover.order().names(), n, "in" ),
                  padded_names( std::move( output_names ), profile.n_outputs, "out" ) );
  return { std::move( state ), std::move( report ) };
}

/* ---------------------------------------------------------------------- */

MultiOutputCover synthesize( std::vector<Equation> const& equations, CompileOptions const& options,
                             std::vector<std::string>* log )
{
  VarOrder const order = options.order ? *options.order : variables( equations );
  if ( options.order )
  {
    for ( auto const& v : variables( equations ) )
      if ( !order.contains( v ) )
        throw argument_error( "variable '" + v + "' missing from the requested input order" );
  }
  if ( options.polarity.size() > equations.size() )
    throw argument_error( "more polarity bits than equations" );

  auto note = [log]( std::string line ) {
    if ( log )
      log->push_back( std::move( line ) );
  };
  if ( options.minimize )
    note( "minimize: exact cover up to " + std::to_string( exact_cover_max_primes ) + " primes and " +
          std::to_string( exact_cover_max_minterms ) + " minterms, greedy beyond" );

  std::vector<NamedCover> covers;
  for ( std::size_t o = 0; o < equations.size(); ++o )
  {
    auto const& eq = equations[o];
    bool const complemented = o < options.polarity.size() && options.polarity[o];
    auto table = table_from_expr( eq.expr, order );
    if ( complemented )
      table = complement( table );
    auto cover = canonical_sop( table );
    std::string line = eq.name + ": " + std::to_string( cover.size() ) + " minterms";
    if ( complemented )
      line += " (complement, output XOR set)";
    if ( options.minimize )
    {
      MinimizeSpec spec{ order, {}, {} };
      for ( std::uint64_t r = 0; r < table.num_rows(); ++r )
        if ( table[static_cast<Row>( r )] )
          spec.on_set.push_back( static_cast<Row>( r ) );
      auto const primes = prime_implicants( spec );
      cover = minimum_cover( primes, spec );
      line += ", " + std::to_string( primes.size() ) + " primes, " + std::to_string( cover.size() ) + " cubes";
    }
    note( std::move( line ) );
    covers.push_back( { eq.name, std::move( cover ) } );
  }
  if ( covers.empty() )
    return MultiOutputCover( order, {}, {} );
  return share_terms( covers );
}

CompileResult compile( std::vector<Equation> const& equations, PlaProfile const& profile, CompileOptions const& options )
{
  profile.validate();
  bool const wants_xor = std::find( options.polarity.begin(), options.polarity.end(), true ) != options.polarity.end();
  if ( wants_xor && !profile.has_output_xor )
    throw argument_error( "output polarity requested but the profile has no output XOR" );

  auto const n_vars = options.order ? options.order->size() : variables( equations ).size();
  if ( n_vars > profile.n_inputs )
    throw capacity_error( capacity_axis::inputs, n_vars, profile.n_inputs );
  if ( equations.size() > profile.n_outputs )
    throw capacity_error( capacity_axis::outputs, equations.size(), profile.n_outputs );

  std::vector<std::string> log;
  auto netlist = synthesize( equations, options, &log );
  auto [state, report] = fit( netlist, profile );
  for ( std::size_t o = 0; o < options.polarity.size(); ++o )
    if ( options.polarity[o] )
      state = set_polarity( state, o, true );
  report.log = std::move( log );
  return { std::move( state ), std::move( report ), std::move( netlist ) };
}

/* ---------------------------------------------------------------------- */

std::optional<Mismatch> verify_device( PlaState const& state, std::vector<Equation> const& equations )
{
  auto const& prof = state.profile();
  auto const n = prof.n_inputs;

  VarOrder inputs;
  if ( !state.input_names().empty() )
  {
    inputs = VarOrder( state.input_names() );
  }
  else
  {
    auto const used = variables( equations );
    if ( used.size() > n )
      throw argument_error( "equations use " + std::to_string( used.size() ) + " variables, device has " +
                            std::to_string( n ) + " inputs" );
    inputs = VarOrder( padded_names( used.names(), n, "in" ) );
  }
  for ( auto const& v : variables( equations ) )
    if ( !inputs.contains( v ) )
      throw argument_error( "variable '" + v + "' is not a device input" );

  std::vector<std::size_t> column;
  for ( std::size_t e = 0; e < equations.size(); ++e )
  {
    if ( state.output_names().empty() )
    {
      if ( e >= prof.n_outputs )
        throw argument_error( "more equations than device outputs" );
      column.push_back( e );
      continue;
    }
    auto const& names = state.output_names();
    auto it = std::find( names.begin(), names.end(), equations[e].name );
    if ( it == names.end() )
      throw argument_error( "output '" + equations[e].name + "' is not a device output" );
    column.push_back( static_cast<std::size_t>( it - names.begin() ) );
  }

  std::vector<TruthTable> tables;
  for ( auto const& eq : equations )
    tables.push_back( table_from_expr( eq.expr, inputs ) );

  PlaEvaluator const device( state );
  for ( std::uint64_t r = 0; r < ( std::uint64_t{ 1 } << n ); ++r )
  {
    auto const row = static_cast<Row>( r );
    auto const out = device( row );
    for ( std::size_t e = 0; e < equations.size(); ++e )
    {
      if ( out[column[e]] != tables[e][row] )
        return Mismatch{ row_to_bits( row, n ), column[e], tables[e][row], out[column[e]] };
    }
  }
  return std::nullopt;
}

std::optional<Mismatch> verify_device( PlaState const& state, MultiOutputCover const& cover )
{
  auto const& prof = state.profile();
  auto const n = prof.n_inputs;
  auto const k = cover.order().size();
  if ( k > n || cover.outputs().size() > prof.n_outputs )
    throw argument_error( "cover is wider than the device" );

  std::vector<Cover> covers;
  for ( std::size_t o = 0; o < cover.outputs().size(); ++o )
    covers.push_back( cover.output_cover( o ) );

  PlaEvaluator const device( state );
  for ( std::uint64_t r = 0; r < ( std::uint64_t{ 1 } << n ); ++r )
  {
    auto const row = static_cast<Row>( r );
    auto const out = device( row );
    auto const cover_row = static_cast<Row>( row >> ( n - k ) );
    for ( std::size_t o = 0; o < covers.size(); ++o )
    {
      bool const expected = cover_eval( covers[o], cover_row );
      if ( out[o] != expected )
        return Mismatch{ row_to_bits( row, n ), o, expected, out[o] };
    }
  }
  return std::nullopt;
}

} // namespace plakit
