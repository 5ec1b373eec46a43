// Acceptance gate: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include "oracles.hpp"

#include <plakit/error.hpp>
#include <plakit/fit.hpp>
#include <plakit/fsm.hpp>
#include <plakit/minimize.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace plakit;

namespace
{

std::string slurp( std::string const& name )
{
  std::ifstream f( std::string( PLAKIT_TEST_DATA ) + "/" + name, std::ios::binary );
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

/// Collects the first failure message of a criterion.
struct Check
{
  std::string failure;

  void expect( bool ok, std::string const& what )
  {
    if ( !ok && failure.empty() )
      failure = what;
  }
  bool ok() const { return failure.empty(); }
};

bool eval_row( Expr const& e, VarOrder const& order, Row r )
{
  Assignment a;
  for ( std::size_t i = 0; i < order.size(); ++i )
    a[order[i]] = oracle::bit( r, i, order.size() );
  return eval( e, a );
}

/// Counts device/equation disagreements using the reference evaluator.
std::size_t count_mismatches( PlaState const& d, std::vector<Equation> const& eqs, std::size_t& vectors )
{
  auto const order = variables( eqs );
  std::size_t bad = 0;
  vectors = std::size_t{ 1 } << order.size();
  for ( Row r = 0; r < vectors; ++r )
  {
    auto const out = oracle::device_outputs( d, row_to_bits( r, order.size() ) );
    for ( std::size_t o = 0; o < eqs.size(); ++o )
      bad += out[o] != eval_row( eqs[o].expr, order, r );
  }
  return bad;
}

double seconds_since( std::chrono::steady_clock::time_point t0 )
{
  return std::chrono::duration<double>( std::chrono::steady_clock::now() - t0 ).count();
}

std::string fmt_seconds( double s )
{
  std::ostringstream o;
  o.precision( 3 );
  o << std::fixed << s << " s";
  return o.str();
}

// 1. Majority end to end.
std::string criterion_1( Check& c )
{
  auto const t0 = std::chrono::steady_clock::now();
  auto const eqs = parse_equations( "F = A'BC + AB'C + ABC' + ABC\n" );
  auto const compiled = compile( eqs, PlaProfile{ 3, 4, 1 } );
  auto const device = parse_fusemap( emit_fusemap( compiled.state ) );
  std::vector<bool> const majority{ 0, 0, 0, 1, 0, 1, 1, 1 };
  std::string column;
  for ( Row r = 0; r < 8; ++r )
  {
    auto const out = eval_pla( device, row_to_bits( r, 3 ) );
    column += out[0] ? '1' : '0';
    c.expect( out == BitVector{ majority[r] }, "row " + std::to_string( r ) + " differs from the majority table" );
  }
  double const dt = seconds_since( t0 );
  c.expect( dt < 1.0, "runtime " + fmt_seconds( dt ) + " exceeds 1 s" );
  return "column " + column + ", " + fmt_seconds( dt );
}

// 2. Functions F and G.
std::string criterion_2( Check& c )
{
  std::ostringstream detail;
  for ( auto const* file : { "f.eqn", "g.eqn" } )
  {
    auto const eqs = parse_equations( slurp( file ) );
    auto const n = variables( eqs ).size();
    auto const r = compile( eqs, PlaProfile{ n, std::size_t{ 1 } << n, 1 } );
    std::size_t vectors = 0;
    auto const bad = count_mismatches( r.state, eqs, vectors );
    c.expect( bad == 0, std::string( file ) + " has mismatches" );
    c.expect( !verify_device( r.state, eqs ), std::string( file ) + " failed verify_device" );
    detail << file << ": " << vectors << " vectors, " << bad << " mismatches; ";
  }

  // G as a five-term SOP, mapped without canonicalization.
  auto const g_expr = parse_equations( slurp( "g.eqn" ) );
  Cover const g( VarOrder{ "A", "B", "C", "D" }, { Cube::parse( "01--" ), Cube::parse( "1011" ), Cube::parse( "-10-" ),
                                                   Cube::parse( "11-1" ), Cube::parse( "-000" ) } );
  c.expect( equivalent( g, g_expr[0].expr ), "five-cube cover is not G" );
  auto const netlist = share_terms( { { "G", g } } );
  auto const placed = fit( netlist, PlaProfile{ 4, 5, 1 } );
  std::size_t vectors = 0;
  c.expect( placed.report.terms_used == 5, "G should use 5 terms" );
  c.expect( count_mismatches( placed.state, g_expr, vectors ) == 0, "5-term G device mismatches" );
  try
  {
    fit( netlist, PlaProfile{ 4, 4, 1 } );
    c.expect( false, "G fitted a 4-term profile" );
  }
  catch ( capacity_error const& e )
  {
    c.expect( e.axis() == capacity_axis::terms && e.needed() == 5, "wrong capacity error for G" );
    detail << "G 5 terms, 4-term profile: " << e.what();
  }
  return detail.str();
}

// 3. POS and polarity.
std::string criterion_3( Check& c )
{
  VarOrder const abc{ "A", "B", "C" };
  auto const g_pos = parse_expression( "(A + B + C)(A' + B + C)(A + B' + C')" );
  auto const pos = canonical_pos( table_from_expr( g_pos, abc ) );
  c.expect( pos.kind() == expr_kind::conjunction && pos.children().size() == 3, "POS is not a three-factor product" );
  for ( Row r = 0; r < 8; ++r )
    c.expect( eval_row( pos, abc, r ) == eval_row( g_pos, abc, r ), "POS differs at row " + std::to_string( r ) );

  PlaProfile prof{ 3, 8, 1 };
  prof.has_output_xor = true;
  auto const eqs = parse_equations( "F = A'BC + AB'C + ABC' + ABC\n" );
  auto const plain = compile( eqs, prof ).state;
  auto const flipped = set_polarity( plain, 0, true );
  for ( Row r = 0; r < 8; ++r )
  {
    auto const in = row_to_bits( r, 3 );
    c.expect( oracle::device_outputs( plain, in )[0] != oracle::device_outputs( flipped, in )[0],
              "polarity bit did not complement row " + std::to_string( r ) );
  }

  CompileOptions opts;
  opts.polarity = { true };
  auto const via_complement = compile( parse_equations( "G = " + format( g_pos ) + "\n" ), prof, opts ).state;
  std::size_t vectors = 0;
  c.expect( count_mismatches( via_complement, parse_equations( "G = " + format( g_pos ) + "\n" ), vectors ) == 0,
            "complement-plus-XOR compile of G mismatches" );
  return "POS " + format( pos ) + "; 8/8 outputs complemented";
}

// 4. Minimization oracle suite.
std::string criterion_4( Check& c )
{
  auto const t0 = std::chrono::steady_clock::now();
  std::mt19937 rng( 20240604 );
  std::uniform_real_distribution<double> dc_frac( 0.0, 0.25 );
  std::size_t exact_checked = 0, primes_checked = 0;
  for ( int i = 0; i < 500; ++i )
  {
    std::size_t const n = 1 + i % 6;
    auto const spec = oracle::random_spec( rng, n, dc_frac( rng ) );
    auto const cover = minimize( MinimizeSpec{ oracle::letters( n ), spec.rows( '1' ), spec.rows( '-' ) } );
    for ( Row r = 0; r < spec.kind.size(); ++r )
    {
      if ( spec.kind[r] == '-' )
        continue;
      bool covered = false;
      for ( auto const& cube : cover.cubes() )
        covered |= oracle::cube_has( cube, r );
      c.expect( covered == ( spec.kind[r] == '1' ), "function " + std::to_string( i ) + " wrong at row " +
                                                         std::to_string( r ) );
    }
    for ( auto const& cube : cover.cubes() )
    {
      ++primes_checked;
      c.expect( oracle::is_prime( cube, spec ), "non-prime cube " + cube.to_string() );
    }
    if ( n <= 4 )
    {
      ++exact_checked;
      auto const best = spec.rows( '1' ).empty() ? 0 : oracle::brute_min_cover( spec );
      c.expect( cover.size() == best, "function " + std::to_string( i ) + ": " + std::to_string( cover.size() ) +
                                          " cubes, optimum " + std::to_string( best ) );
    }
  }
  auto const majority = minimize( table_from_expr( parse_expression( "A'BC + AB'C + ABC' + ABC" ), VarOrder{ "A", "B", "C" } ) );
  c.expect( majority.size() == 3, "majority did not minimize to 3 cubes" );
  for ( auto const& cube : majority.cubes() )
    c.expect( cube.literal_count() == 2, "majority cube " + cube.to_string() + " is not two-literal" );
  double const dt = seconds_since( t0 );
  c.expect( dt < 60.0, "runtime " + fmt_seconds( dt ) + " exceeds 60 s" );
  return "500 functions, " + std::to_string( primes_checked ) + " primes checked, " + std::to_string( exact_checked ) +
         " exact optima compared, " + fmt_seconds( dt );
}

// 5. Device semantics.
std::string criterion_5( Check& c )
{
  for ( auto prof : { PlaProfile{ 3, 4, 1 }, PlaProfile{ 6, 12, 4 }, PlaProfile{ 10, 56, 16 } } )
  {
    auto const blank = blank_device( prof );
    PlaEvaluator const eval( blank );
    for ( Row r = 0; r < ( Row{ 1 } << prof.n_inputs ); ++r )
      c.expect( eval( r ) == BitVector( prof.n_outputs, false ), "blank fuse device output nonzero" );
  }

  PlaProfile const one{ 2, 1, 1 };
  auto const empty = set_crosspoint( PlaState( one ), plane_kind::or_plane, 0, 0, true );
  auto const contra = set_crosspoint( set_crosspoint( empty, plane_kind::and_plane, 0, and_column( 0, false ), true ),
                                      plane_kind::and_plane, 0, and_column( 0, true ), true );
  for ( Row r = 0; r < 4; ++r )
  {
    c.expect( eval_pla( empty, row_to_bits( r, 2 ) ) == BitVector{ 1 }, "empty AND row is not 1" );
    c.expect( eval_pla( contra, row_to_bits( r, 2 ) ) == BitVector{ 0 }, "contradictory AND row is not 0" );
  }

  std::mt19937 rng( 55 );
  std::size_t pairs = 0;
  for ( int i = 0; i < 100; ++i )
  {
    PlaProfile prof{ 1 + rng() % 7, 1 + rng() % 10, 1 + rng() % 4 };
    auto const fuse = oracle::random_device( rng, prof, false );
    PlaProfile anti_prof = prof;
    anti_prof.tech = switch_tech::antifuse;
    PlaState anti( anti_prof );
    for ( std::size_t r = 0; r < prof.n_terms; ++r )
    {
      for ( std::size_t col = 0; col < 2 * prof.n_inputs; ++col )
        anti = anti.with_crosspoint( plane_kind::and_plane, r, col, fuse.and_bit( r, col ) );
      for ( std::size_t o = 0; o < prof.n_outputs; ++o )
        anti = anti.with_crosspoint( plane_kind::or_plane, r, o, fuse.or_bit( r, o ) );
    }
    for ( Row r = 0; r < ( Row{ 1 } << prof.n_inputs ); ++r )
      c.expect( eval_pla( fuse, row_to_bits( r, prof.n_inputs ) ) == eval_pla( anti, row_to_bits( r, prof.n_inputs ) ),
                "fuse and antifuse devices disagree" );
    ++pairs;
  }
  return "blank devices zero, empty=1, contradictory=0, " + std::to_string( pairs ) + " fuse/antifuse pairs equal";
}

// 6. Format round trips.
std::string criterion_6( Check& c )
{
  std::mt19937 rng( 6006 );
  for ( int i = 0; i < 200; ++i )
  {
    PlaProfile prof{ 1 + rng() % 10, 1 + rng() % 16, 1 + rng() % 6 };
    prof.has_output_xor = rng() % 2;
    prof.tech = rng() % 2 ? switch_tech::fuse : switch_tech::antifuse;
    auto const d = oracle::random_device( rng, prof, rng() % 2 );
    auto const text = emit_fusemap( d );
    c.expect( emit_fusemap( parse_fusemap( text ) ) == text, "fuse map round trip changed bytes" );
  }

  for ( int i = 0; i < 200; ++i )
  {
    std::size_t const n = 1 + rng() % 6, m = 1 + rng() % 4;
    auto const cubes = oracle::all_cubes( n );
    std::vector<NamedCover> outs;
    for ( std::size_t o = 0; o < m; ++o )
    {
      Cover cov( oracle::letters( n ) );
      for ( std::size_t k = rng() % 6; k > 0; --k )
      {
        auto const& cube = cubes[rng() % cubes.size()];
        if ( std::find( cov.cubes().begin(), cov.cubes().end(), cube ) == cov.cubes().end() )
          cov.add( cube );
      }
      outs.push_back( { "f" + std::to_string( o ), cov } );
    }
    auto const netlist = share_terms( outs );
    auto const back = read_berkeley_pla( write_berkeley_pla( netlist ) );
    c.expect( back.outputs().size() == m, "Berkeley output count changed" );
    for ( std::size_t o = 0; o < m && o < back.outputs().size(); ++o )
      for ( Row r = 0; r < ( Row{ 1 } << n ); ++r )
        c.expect( cover_eval( back.output_cover( o ), r ) == cover_eval( netlist.output_cover( o ), r ),
                  "Berkeley round trip changed output " + std::to_string( o ) );
  }

  auto const golden = slurp( "majority.pla" );
  auto const written = write_berkeley_pla( synthesize( parse_equations( "F = A'BC + AB'C + ABC' + ABC\n" ), {} ) );
  c.expect( written == golden, "majority .pla differs from golden" );
  c.expect( golden.find( ".i 3\n.o 1\n" ) != std::string::npos && golden.find( ".p 4\n" ) != std::string::npos,
            "golden header" );
  for ( auto const* line : { "011 1\n", "101 1\n", "110 1\n", "111 1\n" } )
    c.expect( golden.find( line ) != std::string::npos, std::string( "golden lacks " ) + line );
  return "200 fuse maps byte-identical, 200 Berkeley covers preserved, golden matches";
}

// 7. Fault suite.
std::string criterion_7( Check& c )
{
  auto const t0 = std::chrono::steady_clock::now();
  auto const good = compile( parse_equations( "F = A'BC + AB'C + ABC' + ABC\n" ), PlaProfile{ 3, 4, 1 } ).state;
  auto const results = classify_faults( good );
  std::size_t const expected_count = 2 * ( 4 * 6 + 4 * 1 );
  c.expect( results.size() == expected_count, "fault count " + std::to_string( results.size() ) );
  std::size_t detectable = 0;
  for ( auto const& r : results )
  {
    auto const bad = inject_fault( good, r.fault );
    if ( r.test_vector )
    {
      ++detectable;
      c.expect( oracle::device_outputs( good, *r.test_vector ) != oracle::device_outputs( bad, *r.test_vector ),
                to_string( r.fault ) + " test vector does not expose it" );
    }
    else
    {
      for ( Row row = 0; row < 8; ++row )
        c.expect( oracle::device_outputs( good, row_to_bits( row, 3 ) ) == oracle::device_outputs( bad, row_to_bits( row, 3 ) ),
                  to_string( r.fault ) + " reported undetectable but changes row " + std::to_string( row ) );
    }
  }
  double const dt = seconds_since( t0 );
  c.expect( dt < 5.0, "runtime " + fmt_seconds( dt ) + " exceeds 5 s" );
  return std::to_string( results.size() ) + " faults, " + std::to_string( detectable ) + " detectable, " +
         std::to_string( results.size() - detectable ) + " undetectable, " + fmt_seconds( dt );
}

// 8. Controller soundness.
std::string criterion_8( Check& c )
{
  PlaProfile const prof{ 8, 64, 8 };
  std::mt19937 rng( 808 );
  std::size_t traces = 0;
  for ( int i = 0; i < 100; ++i )
  {
    auto const fsm = oracle::random_fsm( rng );
    auto const plain = synthesize_controller( fsm, prof ).image;
    auto const small = synthesize_controller( fsm, prof, ControllerOptions{ true } ).image;
    for ( int s = 0; s < 10; ++s )
    {
      auto const seq = oracle::random_inputs( rng, fsm.inputs.size(), 16 );
      auto const want = oracle::interpret( fsm, seq );
      auto const a = simulate_controller( plain, seq );
      auto const b = simulate_controller( small, seq );
      for ( std::size_t k = 0; k < seq.size(); ++k )
      {
        c.expect( plain.layout.encoding.state_of( a[k].state_code ) == want[k].state && a[k].outputs == want[k].outputs,
                  "machine " + std::to_string( i ) + " diverges from interpreter at cycle " + std::to_string( k ) );
        c.expect( a[k].state_code == b[k].state_code && a[k].outputs == b[k].outputs,
                  "machine " + std::to_string( i ) + " minimized trace differs" );
      }
      ++traces;
    }
  }

  auto const toggle = synthesize_controller( parse_kiss2( slurp( "toggle.kiss2" ) ), PlaProfile{ 2, 4, 2 } ).image;
  auto const trace = simulate_controller( toggle, { BitVector{ 1 }, BitVector{ 1 }, BitVector{ 1 } } );
  std::string outs;
  for ( auto const& step : trace )
    outs += step.outputs[0] ? '1' : '0';
  c.expect( outs == "101", "toggle outputs " + outs );
  return std::to_string( traces ) + " traces x 2 controllers match, toggle outputs " + outs;
}

// 9. CoolRunner-scale fit.
std::string criterion_9( Check& c )
{
  std::size_t const n = 10, m = 16;
  PlaProfile const block{ n, 56, m };
  std::mt19937 rng( 909 );
  auto const cubes = oracle::all_cubes( n );

  auto design = [&]( std::size_t terms ) {
    std::vector<Cube> pool;
    while ( pool.size() < terms )
    {
      auto const& cube = cubes[rng() % cubes.size()];
      if ( std::find( pool.begin(), pool.end(), cube ) == pool.end() )
        pool.push_back( cube );
    }
    std::vector<OutputSelection> outs;
    for ( std::size_t o = 0; o < m; ++o )
      outs.push_back( { "f" + std::to_string( o ), {} } );
    // Every term feeds at least one output so all of them are needed.
    for ( std::size_t t = 0; t < terms; ++t )
    {
      outs[t % m].terms.push_back( t );
      for ( std::size_t o = 0; o < m; ++o )
        if ( o != t % m && rng() % 5 == 0 )
          outs[o].terms.push_back( t );
    }
    for ( auto& o : outs )
      std::sort( o.terms.begin(), o.terms.end() );
    return MultiOutputCover( oracle::letters( n ), pool, outs );
  };

  auto const fits = design( 56 );
  auto const placed = fit( fits, block );
  c.expect( placed.report.terms_used == 56, "terms_used " + std::to_string( placed.report.terms_used ) );
  std::size_t checked = 0;
  for ( Row r = 0; r < ( Row{ 1 } << n ); ++r )
  {
    auto const out = oracle::device_outputs( placed.state, row_to_bits( r, n ) );
    for ( std::size_t o = 0; o < m; ++o )
    {
      bool want = false;
      for ( auto t : fits.outputs()[o].terms )
        want |= oracle::cube_has( fits.pool()[t], r );
      c.expect( out[o] == want, "device differs at row " + std::to_string( r ) );
    }
    ++checked;
  }
  c.expect( !verify_device( placed.state, fits ), "verify_device reported a mismatch" );

  std::string overflow = "no error";
  try
  {
    fit( design( 57 ), block );
    c.expect( false, "57-term design fitted" );
  }
  catch ( capacity_error const& e )
  {
    c.expect( e.axis() == capacity_axis::terms && e.needed() == 57, "wrong capacity error" );
    overflow = e.what();
  }
  return "56 terms x 16 outputs verified on " + std::to_string( checked ) + " vectors; 57 terms: " + overflow;
}

} // namespace

int main()
{
  std::vector<std::pair<char const*, std::function<std::string( Check& )>>> const criteria{
      { "majority end-to-end reproduces the majority truth table", criterion_1 },
      { "functions F and G compile, verify and respect capacity", criterion_2 },
      { "canonical POS of G and output polarity", criterion_3 },
      { "minimization oracle suite", criterion_4 },
      { "device semantics", criterion_5 },
      { "fuse map and Berkeley round trips", criterion_6 },
      { "single stuck-crosspoint fault suite", criterion_7 },
      { "controller soundness", criterion_8 },
      { "56x16 block fit and 57-term overflow", criterion_9 },
  };

  int failed = 0;
  for ( std::size_t i = 0; i < criteria.size(); ++i )
  {
    Check check;
    std::string detail;
    try
    {
      detail = criteria[i].second( check );
    }
    catch ( std::exception const& e )
    {
      check.expect( false, std::string( "exception: " ) + e.what() );
    }
    std::cout << "criterion " << i + 1 << ' ' << ( check.ok() ? "PASS" : "FAIL" ) << ": " << criteria[i].first;
    if ( check.ok() )
      std::cout << " (" << detail << ")\n";
    else
      std::cout << " -- " << check.failure << '\n';
    failed += !check.ok();
  }
  std::cout << ( criteria.size() - failed ) << '/' << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
