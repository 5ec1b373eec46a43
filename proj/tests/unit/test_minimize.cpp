#include "oracles.hpp"

#include <plakit/error.hpp>
#include <plakit/minimize.hpp>

#include <gtest/gtest.h>

#include <bit>

using namespace plakit;

namespace
{

MinimizeSpec to_spec( oracle::Spec const& s )
{
  return MinimizeSpec{ oracle::letters( s.n ), s.rows( '1' ), s.rows( '-' ) };
}

std::vector<std::string> patterns( std::vector<Cube> const& cubes )
{
  std::vector<std::string> out;
  for ( auto const& c : cubes )
    out.push_back( c.to_string() );
  return out;
}

} // namespace

TEST( Primes, MajorityPrimesInCanonicalOrder )
{
  MinimizeSpec const spec{ VarOrder{ "A", "B", "C" }, { 3, 5, 6, 7 }, {} };
  EXPECT_EQ( patterns( prime_implicants( spec ) ), ( std::vector<std::string>{ "11-", "1-1", "-11" } ) );
}

TEST( Primes, MatchBruteForceEnumeration )
{
  std::mt19937 rng( 4242 );
  for ( int i = 0; i < 150; ++i )
  {
    auto const s = oracle::random_spec( rng, 1 + i % 5, 0.2 );
    auto primes = prime_implicants( to_spec( s ) );
    std::sort( primes.begin(), primes.end() );
    auto expected = s.rows( '1' ).empty() ? std::vector<Cube>{} : oracle::brute_primes( s );
    EXPECT_EQ( patterns( primes ), patterns( expected ) );
  }
}

TEST( Minimize, ThreeMintermFunction )
{
  // F = ABC + A'BC + AB'C' merges to BC + AB'C'
  MinimizeSpec const spec{ VarOrder{ "A", "B", "C" }, { 3, 4, 7 }, {} };
  auto const cover = minimize( spec );
  auto pats = patterns( cover.cubes() );
  std::sort( pats.begin(), pats.end() );
  EXPECT_EQ( pats, ( std::vector<std::string>{ "-11", "100" } ) );
}

TEST( Minimize, MajorityGivesThreeTwoLiteralCubes )
{
  auto const t = table_from_expr( parse_expression( "A'BC + AB'C + ABC' + ABC" ), VarOrder{ "A", "B", "C" } );
  auto const cover = minimize( t );
  ASSERT_EQ( cover.size(), 3u );
  for ( auto const& c : cover.cubes() )
    EXPECT_EQ( c.literal_count(), 2u );
  EXPECT_TRUE( equivalent( cover, t ) );
}

TEST( Minimize, DontCaresAreExploited )
{
  // ON {1,3}, DC {5,7}: the single cube --1 covers everything.
  MinimizeSpec const spec{ VarOrder{ "A", "B", "C" }, { 1, 3 }, { 5, 7 } };
  EXPECT_EQ( patterns( minimize( spec ).cubes() ), ( std::vector<std::string>{ "--1" } ) );
}

TEST( Minimize, ConstantFunctions )
{
  MinimizeSpec const none{ VarOrder{ "A", "B" }, {}, { 1 } };
  EXPECT_TRUE( minimize( none ).empty() );
  MinimizeSpec const all{ VarOrder{ "A", "B" }, { 0, 1, 2, 3 }, {} };
  EXPECT_EQ( patterns( minimize( all ).cubes() ), ( std::vector<std::string>{ "--" } ) );
}

TEST( Minimize, SpecValidation )
{
  EXPECT_THROW( ( MinimizeSpec{ VarOrder{ "A" }, { 1 }, { 1 } }.validate() ), argument_error );
  EXPECT_THROW( ( MinimizeSpec{ VarOrder{ "A" }, { 2 }, {} }.validate() ), argument_error );
  EXPECT_THROW( minimum_cover( { Cube::parse( "0" ) }, MinimizeSpec{ VarOrder{ "A" }, { 1 }, {} } ), argument_error );
}

TEST( Minimize, ExactCoverMatchesBruteForceOptimum )
{
  std::mt19937 rng( 99 );
  for ( int i = 0; i < 200; ++i )
  {
    auto const s = oracle::random_spec( rng, 2 + i % 3, 0.2 );
    auto const spec = to_spec( s );
    auto const cover = minimize( spec );
    EXPECT_EQ( cover.size(), s.rows( '1' ).empty() ? 0u : oracle::brute_min_cover( s ) );
  }
}

TEST( Minimize, SoundAndPrimeOnWiderFunctions )
{
  std::mt19937 rng( 5150 );
  for ( int i = 0; i < 60; ++i )
  {
    auto const s = oracle::random_spec( rng, 5 + i % 3, 0.15 );
    auto const cover = minimize( to_spec( s ) );
    for ( Row r = 0; r < s.kind.size(); ++r )
    {
      if ( s.kind[r] == '-' )
        continue;
      ASSERT_EQ( cover_eval( cover, r ), s.kind[r] == '1' );
    }
    for ( auto const& c : cover.cubes() )
      ASSERT_TRUE( oracle::is_prime( c, s ) ) << c.to_string();
  }
}

TEST( Minimize, CoverMethodThresholds )
{
  EXPECT_EQ( select_cover_method( exact_cover_max_primes, exact_cover_max_minterms ), cover_method::exact );
  EXPECT_EQ( select_cover_method( exact_cover_max_primes + 1, 1 ), cover_method::greedy );
  EXPECT_EQ( select_cover_method( 1, exact_cover_max_minterms + 1 ), cover_method::greedy );
}

TEST( Minimize, GreedyPathStillCovers )
{
  // Parity of 7 variables: 64 ON minterms, 64 primes, every prime essential.
  std::vector<Row> on;
  for ( Row r = 0; r < 128; ++r )
    if ( std::popcount( r ) % 2 )
      on.push_back( r );
  MinimizeSpec const spec{ oracle::letters( 7 ), on, {} };
  auto const cover = minimize( spec );
  EXPECT_EQ( cover.size(), 64u );
  for ( Row r = 0; r < 128; ++r )
    ASSERT_EQ( cover_eval( cover, r ), std::popcount( r ) % 2 == 1 );
}

TEST( Minimize, Deterministic )
{
  std::mt19937 rng( 3 );
  auto const s = oracle::random_spec( rng, 6, 0.2 );
  EXPECT_EQ( minimize( to_spec( s ) ), minimize( to_spec( s ) ) );
}

TEST( ShareTerms, PoolsCommonCubes )
{
  VarOrder const order{ "A", "B", "C", "D" };
  Cover const f1( order, { Cube::parse( "11--" ), Cube::parse( "--1-" ) } );
  Cover const f2( order, { Cube::parse( "11--" ), Cube::parse( "---1" ) } );
  auto const m = share_terms( { { "F1", f1 }, { "F2", f2 } } );
  EXPECT_EQ( m.pool().size(), 3u );
  EXPECT_EQ( m.outputs()[0].terms, ( std::vector<std::size_t>{ 0, 1 } ) );
  EXPECT_EQ( m.outputs()[1].terms, ( std::vector<std::size_t>{ 0, 2 } ) );
  EXPECT_EQ( m.output_cover( 1 ), f2 );
}

TEST( ShareTerms, MultiOutputValidation )
{
  VarOrder const order{ "A" };
  EXPECT_THROW( MultiOutputCover( order, { Cube::parse( "1" ), Cube::parse( "1" ) }, {} ), argument_error );
  EXPECT_THROW( MultiOutputCover( order, { Cube::parse( "1" ) }, { { "F", { 1 } } } ), argument_error );
  EXPECT_THROW( MultiOutputCover( order, { Cube::parse( "1" ) }, { { "F", { 0 } }, { "F", { 0 } } } ),
                argument_error );
}
