#include <plakit/logic.hpp>

#include <plakit/error.hpp>

#include <algorithm>
#include <utility>

namespace plakit
{

namespace
{

void check_table_size( std::size_t n )
{
  if ( n > max_table_vars )
    throw argument_error( "table over " + std::to_string( n ) + " variables exceeds the limit of " +
                          std::to_string( max_table_vars ) );
}

Row var_bit( std::size_t index, std::size_t n ) { return Row{ 1 } << ( n - 1 - index ); }

} // namespace

BitVector row_to_bits( Row row, std::size_t n )
{
  BitVector bits( n );
  for ( std::size_t j = 0; j < n; ++j )
    bits[j] = ( row & var_bit( j, n ) ) != 0;
  return bits;
}

Row bits_to_row( BitVector const& bits )
{
  if ( bits.size() > 32u )
    throw argument_error( "bit vector too wide for a row index" );
  Row row = 0;
  for ( bool b : bits )
    row = ( row << 1 ) | ( b ? 1u : 0u );
  return row;
}

std::string to_string( BitVector const& bits )
{
  std::string s;
  s.reserve( bits.size() );
  for ( bool b : bits )
    s += b ? '1' : '0';
  return s;
}

/* ---------------------------------------------------------------------- */

TruthTable::TruthTable( VarOrder order ) : order_( std::move( order ) )
{
  check_table_size( order_.size() );
  bits_.assign( std::size_t{ 1 } << order_.size(), false );
}

TruthTable::TruthTable( VarOrder order, std::vector<bool> bits ) : order_( std::move( order ) ), bits_( std::move( bits ) )
{
  check_table_size( order_.size() );
  if ( bits_.size() != ( std::size_t{ 1 } << order_.size() ) )
    throw argument_error( "truth table over " + std::to_string( order_.size() ) + " variables needs " +
                          std::to_string( std::size_t{ 1 } << order_.size() ) + " bits, got " +
                          std::to_string( bits_.size() ) );
}

/* ---------------------------------------------------------------------- */

Cube Cube::parse( std::string_view pattern )
{
  std::vector<Literal> lits;
  lits.reserve( pattern.size() );
  for ( char c : pattern )
  {
    switch ( c )
    {
    case '0':
      lits.push_back( Literal::neg );
      break;
    case '1':
      lits.push_back( Literal::pos );
      break;
    case '-':
      lits.push_back( Literal::absent );
      break;
    default:
      throw argument_error( std::string( "illegal cube character '" ) + c + "'" );
    }
  }
  return Cube( std::move( lits ) );
}

Cube Cube::minterm( Row row, std::size_t n )
{
  std::vector<Literal> lits( n );
  for ( std::size_t j = 0; j < n; ++j )
    lits[j] = ( row & var_bit( j, n ) ) ? Literal::pos : Literal::neg;
  return Cube( std::move( lits ) );
}

std::size_t Cube::literal_count() const noexcept
{
  return static_cast<std::size_t>(
      std::count_if( lits_.begin(), lits_.end(), []( Literal l ) { return l != Literal::absent; } ) );
}

bool Cube::eval( BitVector const& input ) const
{
  if ( input.size() != size() )
    throw argument_error( "input has " + std::to_string( input.size() ) + " bits, cube has " +
                          std::to_string( size() ) + " variables" );
  for ( std::size_t j = 0; j < size(); ++j )
  {
    if ( lits_[j] == Literal::pos && !input[j] )
      return false;
    if ( lits_[j] == Literal::neg && input[j] )
      return false;
  }
  return true;
}

bool Cube::contains_row( Row row ) const { return RowMatcher( *this )( row ); }

bool Cube::intersects( Cube const& other ) const
{
  for ( std::size_t j = 0; j < size(); ++j )
  {
    if ( lits_[j] != Literal::absent && other.lits_[j] != Literal::absent && lits_[j] != other.lits_[j] )
      return false;
  }
  return true;
}

bool Cube::contains( Cube const& other ) const
{
  for ( std::size_t j = 0; j < size(); ++j )
  {
    if ( lits_[j] != Literal::absent && lits_[j] != other.lits_[j] )
      return false;
  }
  return true;
}

std::string Cube::to_string() const
{
  std::string s;
  s.reserve( size() );
  for ( auto l : lits_ )
    s += l == Literal::neg ? '0' : l == Literal::pos ? '1' : '-';
  return s;
}

std::vector<Cube> sharp( Cube const& a, Cube const& b )
{
  if ( !a.intersects( b ) )
    return { a };
  std::vector<Cube> result;
  Cube rest = a;
  for ( std::size_t j = 0; j < a.size(); ++j )
  {
    if ( b[j] == Literal::absent || rest[j] != Literal::absent )
      continue;
    Cube piece = rest;
    piece.set( j, b[j] == Literal::pos ? Literal::neg : Literal::pos );
    result.push_back( std::move( piece ) );
    rest.set( j, b[j] );
  }
  return result;
}

RowMatcher::RowMatcher( Cube const& cube )
{
  if ( cube.size() > 32u )
    throw argument_error( "cube too wide for row matching" );
  auto const n = cube.size();
  for ( std::size_t j = 0; j < n; ++j )
  {
    if ( cube[j] == Literal::absent )
      continue;
    care |= var_bit( j, n );
    if ( cube[j] == Literal::pos )
      value |= var_bit( j, n );
  }
}

/* ---------------------------------------------------------------------- */

Cover::Cover( VarOrder order, std::vector<Cube> cubes ) : order_( std::move( order ) )
{
  cubes_.reserve( cubes.size() );
  for ( auto& c : cubes )
    add( std::move( c ) );
}

void Cover::add( Cube cube )
{
  if ( cube.size() != order_.size() )
    throw argument_error( "cube " + cube.to_string() + " does not match a " + std::to_string( order_.size() ) +
                          "-variable order" );
  cubes_.push_back( std::move( cube ) );
}

/* ---------------------------------------------------------------------- */

namespace
{

/// Expression with variables resolved to row bit masks.
struct BoundExpr
{
  expr_kind kind = expr_kind::constant;
  bool value = false;
  Row mask = 0;
  std::vector<BoundExpr> children;

  bool eval( Row row ) const
  {
    switch ( kind )
    {
    case expr_kind::constant:
      return value;
    case expr_kind::variable:
      return ( row & mask ) != 0;
    case expr_kind::negation:
      return !children.front().eval( row );
    case expr_kind::conjunction:
      for ( auto const& c : children )
        if ( !c.eval( row ) )
          return false;
      return true;
    case expr_kind::disjunction:
      for ( auto const& c : children )
        if ( c.eval( row ) )
          return true;
      return false;
    }
    return false;
  }
};

BoundExpr bind( Expr const& e, VarOrder const& order )
{
  BoundExpr b;
  b.kind = e.kind();
  if ( e.kind() == expr_kind::constant )
    b.value = e.value();
  else if ( e.kind() == expr_kind::variable )
  {
    auto idx = order.index_of( e.name() );
    if ( !idx )
      throw argument_error( "variable '" + e.name() + "' missing from the variable order" );
    b.mask = var_bit( *idx, order.size() );
  }
  for ( auto const& c : e.children() )
    b.children.push_back( bind( c, order ) );
  return b;
}

} // namespace

TruthTable table_from_expr( Expr const& expr, VarOrder const& order )
{
  TruthTable table( order );
  auto const bound = bind( expr, order );
  for ( std::uint64_t r = 0; r < table.num_rows(); ++r )
    table.set( static_cast<Row>( r ), bound.eval( static_cast<Row>( r ) ) );
  return table;
}

TruthTable table_from_cover( Cover const& cover )
{
  TruthTable table( cover.order() );
  std::vector<RowMatcher> matchers;
  for ( auto const& c : cover.cubes() )
    matchers.emplace_back( c );
  for ( std::uint64_t r = 0; r < table.num_rows(); ++r )
  {
    auto const row = static_cast<Row>( r );
    table.set( row, std::any_of( matchers.begin(), matchers.end(), [row]( RowMatcher const& m ) { return m( row ); } ) );
  }
  return table;
}

TruthTable complement( TruthTable const& table )
{
  auto bits = table.bits();
  bits.flip();
  return TruthTable( table.order(), std::move( bits ) );
}

Cover canonical_sop( TruthTable const& table )
{
  Cover cover( table.order() );
  for ( std::uint64_t r = 0; r < table.num_rows(); ++r )
  {
    if ( table[static_cast<Row>( r )] )
      cover.add( Cube::minterm( static_cast<Row>( r ), table.num_vars() ) );
  }
  return cover;
}

Expr canonical_pos( TruthTable const& table )
{
  auto const n = table.num_vars();
  std::vector<Expr> factors;
  for ( std::uint64_t r = 0; r < table.num_rows(); ++r )
  {
    auto const row = static_cast<Row>( r );
    if ( table[row] )
      continue;
    std::vector<Expr> literals;
    for ( std::size_t j = 0; j < n; ++j )
    {
      auto v = Expr::variable( table.order()[j] );
      literals.push_back( ( row & var_bit( j, n ) ) ? Expr::negate( std::move( v ) ) : std::move( v ) );
    }
    factors.push_back( Expr::disjunction( std::move( literals ) ) );
  }
  return Expr::conjunction( std::move( factors ) );
}

Expr to_expr( Cube const& cube, VarOrder const& order )
{
  if ( cube.size() != order.size() )
    throw argument_error( "cube width does not match the variable order" );
  std::vector<Expr> literals;
  for ( std::size_t j = 0; j < cube.size(); ++j )
  {
    if ( cube[j] == Literal::absent )
      continue;
    auto v = Expr::variable( order[j] );
    literals.push_back( cube[j] == Literal::neg ? Expr::negate( std::move( v ) ) : std::move( v ) );
  }
  return Expr::conjunction( std::move( literals ) );
}

Expr to_expr( Cover const& cover )
{
  std::vector<Expr> terms;
  for ( auto const& c : cover.cubes() )
    terms.push_back( to_expr( c, cover.order() ) );
  return Expr::disjunction( std::move( terms ) );
}

bool cover_eval( Cover const& cover, BitVector const& input )
{
  if ( input.size() != cover.order().size() )
    throw argument_error( "input has " + std::to_string( input.size() ) + " bits, cover has " +
                          std::to_string( cover.order().size() ) + " variables" );
  return std::any_of( cover.cubes().begin(), cover.cubes().end(), [&]( Cube const& c ) { return c.eval( input ); } );
}

bool cover_eval( Cover const& cover, Row row )
{
  return std::any_of( cover.cubes().begin(), cover.cubes().end(),
                      [&]( Cube const& c ) { return RowMatcher( c )( row ); } );
}

/* ---------------------------------------------------------------------- */

namespace
{

VarOrder const* carried_order( Function const& f )
{
  if ( auto t = std::get_if<TruthTable>( &f ) )
    return &t->order();
  if ( auto c = std::get_if<Cover>( &f ) )
    return &c->order();
  return nullptr;
}

TruthTable to_table( Function const& f, VarOrder const& order )
{
  if ( auto t = std::get_if<TruthTable>( &f ) )
    return *t;
  if ( auto c = std::get_if<Cover>( &f ) )
    return table_from_cover( *c );
  return table_from_expr( std::get<Expr>( f ), order );
}

} // namespace

std::optional<Row> first_difference( Function const& a, Function const& b, std::optional<VarOrder> const& order )
{
  VarOrder shared;
  auto const* oa = carried_order( a );
  auto const* ob = carried_order( b );
  if ( oa && ob && *oa != *ob )
    throw argument_error( "variable orders differ" );
  if ( oa || ob )
  {
    shared = oa ? *oa : *ob;
    if ( order && *order != shared )
      throw argument_error( "variable orders differ" );
  }
  else if ( order )
  {
    shared = *order;
  }
  else
  {
    shared = variables( std::get<Expr>( a ) );
    for ( auto const& v : variables( std::get<Expr>( b ) ) )
      shared.add( v );
  }
  check_table_size( shared.size() );

  auto const ta = to_table( a, shared );
  auto const tb = to_table( b, shared );
  for ( std::uint64_t r = 0; r < ta.num_rows(); ++r )
  {
    if ( ta[static_cast<Row>( r )] != tb[static_cast<Row>( r )] )
      return static_cast<Row>( r );
  }
  return std::nullopt;
}

bool equivalent( Function const& a, Function const& b, std::optional<VarOrder> const& order )
{
  return !first_difference( a, b, order ).has_value();
}

} // namespace plakit
