#include <plakit/minimize.hpp>

#include <plakit/error.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <unordered_set>

namespace plakit
{

namespace
{

bool canonical_less( Cube const& a, Cube const& b )
{
  if ( a.absent_count() != b.absent_count() )
    return a.absent_count() > b.absent_count();
  return a < b;
}

std::vector<Row> sorted_unique( std::vector<Row> rows )
{
  std::sort( rows.begin(), rows.end() );
  rows.erase( std::unique( rows.begin(), rows.end() ), rows.end() );
  return rows;
}

Cube cube_from_masks( std::uint32_t absent, Row value, std::size_t n )
{
  std::vector<Literal> lits( n );
  for ( std::size_t j = 0; j < n; ++j )
  {
    Row const bit = Row{ 1 } << ( n - 1 - j );
    lits[j] = ( absent & bit ) ? Literal::absent : ( value & bit ) ? Literal::pos : Literal::neg;
  }
  return Cube( std::move( lits ) );
}

/// True if the sorted index sequence of `a` precedes that of `b` (same popcount).
bool lex_smaller_selection( std::uint32_t a, std::uint32_t b )
{
  auto const diff = a ^ b;
  if ( diff == 0 )
    return false;
  return ( a & ( diff & ( ~diff + 1 ) ) ) != 0;
}

std::vector<std::size_t> greedy_cover( std::vector<std::vector<std::size_t>> const& covers_of_prime,
                                       std::size_t num_minterms )
{
  std::vector<bool> covered( num_minterms, false );
  std::size_t remaining = num_minterms;
  std::vector<std::size_t> chosen;
  while ( remaining > 0 )
  {
    std::size_t best = 0, best_gain = 0;
    for ( std::size_t p = 0; p < covers_of_prime.size(); ++p )
    {
      std::size_t gain = 0;
      for ( auto m : covers_of_prime[p] )
        gain += covered[m] ? 0u : 1u;
      if ( gain > best_gain )
      {
        best = p;
        best_gain = gain;
      }
    }
    chosen.push_back( best );
    for ( auto m : covers_of_prime[best] )
    {
      if ( !covered[m] )
      {
        covered[m] = true;
        --remaining;
      }
    }
  }
  return chosen;
}

/// Petrick's method: multiply out the product of per-minterm clauses,
/// absorbing supersets and dropping products larger than `bound`.
std::uint32_t petrick( std::vector<std::uint32_t> clauses, std::size_t bound )
{
  std::sort( clauses.begin(), clauses.end(),
             []( std::uint32_t a, std::uint32_t b ) { return std::popcount( a ) < std::popcount( b ); } );

  std::vector<std::uint32_t> products{ 0u };
  for ( auto clause : clauses )
  {
    std::vector<std::uint32_t> next;
    for ( auto p : products )
    {
      if ( p & clause )
      {
        next.push_back( p );
        continue;
      }
      for ( auto bits = clause; bits; bits &= bits - 1 )
      {
        auto const q = p | ( bits & ( ~bits + 1 ) );
        if ( static_cast<std::size_t>( std::popcount( q ) ) <= bound )
          next.push_back( q );
      }
    }
    std::sort( next.begin(), next.end(), []( std::uint32_t a, std::uint32_t b ) {
      auto const pa = std::popcount( a ), pb = std::popcount( b );
      return pa != pb ? pa < pb : a < b;
    } );
    next.erase( std::unique( next.begin(), next.end() ), next.end() );

    products.clear();
    for ( auto q : next )
    {
      bool const absorbed =
          std::any_of( products.begin(), products.end(), [q]( std::uint32_t k ) { return ( k & q ) == k; } );
      if ( !absorbed )
        products.push_back( q );
    }
  }

  std::uint32_t best = products.front();
  for ( auto p : products )
  {
    if ( std::popcount( p ) < std::popcount( best ) ||
         ( std::popcount( p ) == std::popcount( best ) && lex_smaller_selection( p, best ) ) )
      best = p;
  }
  return best;
}

} // namespace

void MinimizeSpec::validate() const
{
  auto const n = order.size();
  if ( n > max_minimize_vars )
    throw argument_error( "minimization over " + std::to_string( n ) + " variables exceeds the limit of " +
                          std::to_string( max_minimize_vars ) );
  auto const rows = std::uint64_t{ 1 } << n;
  auto check = [rows]( std::vector<Row> const& set, char const* what ) {
    for ( auto r : set )
      if ( r >= rows )
        throw argument_error( std::string( what ) + " row " + std::to_string( r ) + " out of range" );
  };
  check( on_set, "ON-set" );
  check( dc_set, "DC-set" );
  auto const on = sorted_unique( on_set );
  auto const dc = sorted_unique( dc_set );
  std::vector<Row> both;
  std::set_intersection( on.begin(), on.end(), dc.begin(), dc.end(), std::back_inserter( both ) );
  if ( !both.empty() )
    throw argument_error( "row " + std::to_string( both.front() ) + " is in both the ON-set and the DC-set" );
}

cover_method select_cover_method( std::size_t primes, std::size_t on_minterms ) noexcept
{
  return primes <= exact_cover_max_primes && on_minterms <= exact_cover_max_minterms ? cover_method::exact
                                                                                      : cover_method::greedy;
}

std::vector<Cube> prime_implicants( MinimizeSpec const& spec )
{
  spec.validate();
  if ( spec.on_set.empty() )
    return {};

  auto const n = spec.order.size();
  auto key = []( std::uint32_t absent, Row value ) { return ( std::uint64_t{ absent } << 32 ) | value; };

  std::unordered_set<std::uint64_t> current;
  for ( auto r : spec.on_set )
    current.insert( key( 0, r ) );
  for ( auto r : spec.dc_set )
    current.insert( key( 0, r ) );

  std::vector<Cube> primes;
  while ( !current.empty() )
  {
    std::unordered_set<std::uint64_t> next, merged;
    for ( auto k : current )
    {
      auto const absent = static_cast<std::uint32_t>( k >> 32 );
      auto const value = static_cast<Row>( k );
      for ( std::size_t b = 0; b < n; ++b )
      {
        Row const bit = Row{ 1 } << b;
        if ( ( absent & bit ) || ( value & bit ) )
          continue;
        auto const partner = key( absent, value | bit );
        if ( current.count( partner ) )
        {
          next.insert( key( absent | bit, value ) );
          merged.insert( k );
          merged.insert( partner );
        }
      }
    }
    for ( auto k : current )
    {
      if ( !merged.count( k ) )
        primes.push_back( cube_from_masks( static_cast<std::uint32_t>( k >> 32 ), static_cast<Row>( k ), n ) );
    }
    current = std::move( next );
  }

  std::sort( primes.begin(), primes.end(), canonical_less );
  return primes;
}

Cover minimum_cover( std::vector<Cube> const& primes, MinimizeSpec const& spec )
{
  spec.validate();
  auto const n = spec.order.size();
  for ( auto const& p : primes )
    if ( p.size() != n )
      throw argument_error( "prime " + p.to_string() + " does not match the variable order" );

  auto const on = sorted_unique( spec.on_set );
  Cover result( spec.order );
  if ( on.empty() )
    return result;

  auto candidates = primes;
  std::sort( candidates.begin(), candidates.end(), canonical_less );
  candidates.erase( std::unique( candidates.begin(), candidates.end() ), candidates.end() );

  // keep only primes that cover at least one ON minterm
  std::vector<Cube> useful;
  std::vector<std::vector<std::size_t>> covers_of_prime;
  for ( auto const& p : candidates )
  {
    RowMatcher const match( p );
    std::vector<std::size_t> hit;
    for ( std::size_t m = 0; m < on.size(); ++m )
      if ( match( on[m] ) )
        hit.push_back( m );
    if ( !hit.empty() )
    {
      useful.push_back( p );
      covers_of_prime.push_back( std::move( hit ) );
    }
  }

  std::vector<std::uint32_t> clauses( on.size(), 0u );
  std::vector<bool> covered( on.size(), false );
  for ( std::size_t p = 0; p < useful.size(); ++p )
  {
    for ( auto m : covers_of_prime[p] )
    {
      covered[m] = true;
      if ( p < 32u )
        clauses[m] |= std::uint32_t{ 1 } << p;
    }
  }
  for ( std::size_t m = 0; m < on.size(); ++m )
    if ( !covered[m] )
      throw argument_error( "primes do not cover ON minterm " + std::to_string( on[m] ) );

  auto const greedy = greedy_cover( covers_of_prime, on.size() );
  if ( select_cover_method( useful.size(), on.size() ) == cover_method::greedy )
  {
    for ( auto p : greedy )
      result.add( useful[p] );
    return result;
  }

  auto const best = petrick( std::move( clauses ), greedy.size() );
  for ( std::size_t p = 0; p < useful.size(); ++p )
    if ( best & ( std::uint32_t{ 1 } << p ) )
      result.add( useful[p] );
  return result;
}

Cover minimize( MinimizeSpec const& spec )
{
  return minimum_cover( prime_implicants( spec ), spec );
}

Cover minimize( TruthTable const& table, std::vector<Row> const& dc )
{
  MinimizeSpec spec{ table.order(), {}, sorted_unique( dc ) };
  spec.validate();
  for ( std::uint64_t r = 0; r < table.num_rows(); ++r )
  {
    auto const row = static_cast<Row>( r );
    if ( table[row] && !std::binary_search( spec.dc_set.begin(), spec.dc_set.end(), row ) )
      spec.on_set.push_back( row );
  }
  return minimize( spec );
}

Cover minimize( Cover const& cover, std::vector<Row> const& dc )
{
  if ( cover.order().size() > max_minimize_vars )
    throw argument_error( "minimization over " + std::to_string( cover.order().size() ) +
                          " variables exceeds the limit of " + std::to_string( max_minimize_vars ) );
  return minimize( table_from_cover( cover ), dc );
}

/* ---------------------------------------------------------------------- */

MultiOutputCover::MultiOutputCover( VarOrder order, std::vector<Cube> pool, std::vector<OutputSelection> outputs )
    : order_( std::move( order ) ), pool_( std::move( pool ) ), outputs_( std::move( outputs ) )
{
  std::map<Cube, std::size_t> seen;
  for ( std::size_t i = 0; i < pool_.size(); ++i )
  {
    if ( pool_[i].size() != order_.size() )
      throw argument_error( "pool cube " + pool_[i].to_string() + " does not match the variable order" );
    if ( !seen.emplace( pool_[i], i ).second )
      throw argument_error( "duplicate pool cube " + pool_[i].to_string() );
  }
  for ( std::size_t o = 0; o < outputs_.size(); ++o )
  {
    if ( !is_identifier( outputs_[o].name ) )
      throw argument_error( "invalid output name '" + outputs_[o].name + "'" );
    for ( std::size_t q = 0; q < o; ++q )
      if ( outputs_[q].name == outputs_[o].name )
        throw argument_error( "duplicate output name '" + outputs_[o].name + "'" );
    for ( auto t : outputs_[o].terms )
      if ( t >= pool_.size() )
        throw argument_error( "output '" + outputs_[o].name + "' references term " + std::to_string( t ) +
                              " outside a pool of " + std::to_string( pool_.size() ) );
  }
}

Cover MultiOutputCover::output_cover( std::size_t o ) const
{
  Cover cover( order_ );
  for ( auto t : outputs_.at( o ).terms )
    cover.add( pool_[t] );
  return cover;
}

MultiOutputCover share_terms( std::vector<NamedCover> const& covers )
{
  VarOrder order = covers.empty() ? VarOrder{} : covers.front().cover.order();
  std::vector<Cube> pool;
  std::map<Cube, std::size_t> index;
  std::vector<OutputSelection> outputs;
  for ( auto const& nc : covers )
  {
    if ( nc.cover.order() != order )
      throw argument_error( "cover '" + nc.name + "' uses a different variable order" );
    OutputSelection sel{ nc.name, {} };
    for ( auto const& c : nc.cover.cubes() )
    {
      auto [it, inserted] = index.emplace( c, pool.size() );
      if ( inserted )
        pool.push_back( c );
      if ( std::find( sel.terms.begin(), sel.terms.end(), it->second ) == sel.terms.end() )
        sel.terms.push_back( it->second );
    }
    outputs.push_back( std::move( sel ) );
  }
  return MultiOutputCover( std::move( order ), std::move( pool ), std::move( outputs ) );
}

} // namespace plakit
