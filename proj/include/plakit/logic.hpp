#pragma once

#include <plakit/expr.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace plakit
{

/// Row index into a truth table. Variable 0 of the order is the most significant bit.
using Row = std::uint32_t;

/// One bit per variable, index 0 = leftmost variable.
using BitVector = std::vector<bool>;

/// Exhaustive structures refuse more variables than this (2^24 rows).
inline constexpr std::size_t max_table_vars = 24;

BitVector row_to_bits( Row row, std::size_t n );
Row bits_to_row( BitVector const& bits );
/// "011" style rendering of a bit vector.
std::string to_string( BitVector const& bits );

class TruthTable
{
public:
  /// All-zero table. Throws argument_error above max_table_vars.
  explicit TruthTable( VarOrder order );
  TruthTable( VarOrder order, std::vector<bool> bits );

  VarOrder const& order() const noexcept { return order_; }
  std::size_t num_vars() const noexcept { return order_.size(); }
  std::uint64_t num_rows() const noexcept { return bits_.size(); }

  bool operator[]( Row row ) const { return bits_[row]; }
  void set( Row row, bool value ) { bits_[row] = value; }
  std::vector<bool> const& bits() const noexcept { return bits_; }

  friend bool operator==( TruthTable const&, TruthTable const& ) = default;

private:
  VarOrder order_;
  std::vector<bool> bits_;
};

/// Literal state of one variable in a cube. The enumerator order matches the
/// Berkeley character order '0' < '1' < '-' so that cube comparison is the
/// lexicographic order of the pattern strings.
enum class Literal : std::uint8_t
{
  neg = 0,
  pos = 1,
  absent = 2
};

/// Product term as a per-variable literal vector.
class Cube
{
public:
  Cube() = default;
  /// Universal cube over `n` variables (every literal absent).
  explicit Cube( std::size_t n ) : lits_( n, Literal::absent ) {}
  explicit Cube( std::vector<Literal> lits ) : lits_( std::move( lits ) ) {}

  /// Parses a pattern of '0', '1', '-'.
  static Cube parse( std::string_view pattern );
  /// Full minterm for `row` over `n` variables.
  static Cube minterm( Row row, std::size_t n );

  std::size_t size() const noexcept { return lits_.size(); }
  Literal operator[]( std::size_t i ) const { return lits_[i]; }
  void set( std::size_t i, Literal l ) { lits_[i] = l; }
  std::vector<Literal> const& literals() const noexcept { return lits_; }

  std::size_t literal_count() const noexcept;
  std::size_t absent_count() const noexcept { return size() - literal_count(); }

  bool eval( BitVector const& input ) const;
  bool contains_row( Row row ) const;
  bool intersects( Cube const& other ) const;
  /// True if every minterm of `other` is a minterm of this cube.
  bool contains( Cube const& other ) const;

  /// Pattern string over '0', '1', '-'.
  std::string to_string() const;

  friend auto operator<=>( Cube const&, Cube const& ) = default;
  friend bool operator==( Cube const&, Cube const& ) = default;

private:
  std::vector<Literal> lits_;
};

/// Disjoint cubes covering `a` minus `b`.
std::vector<Cube> sharp( Cube const& a, Cube const& b );

/// Bit masks for testing a cube against a row index: the cube holds row r
/// iff (r & care) == value.
struct RowMatcher
{
  Row care = 0;
  Row value = 0;

  explicit RowMatcher( Cube const& cube );
  bool operator()( Row row ) const noexcept { return ( row & care ) == value; }
};

/// OR of cubes over a shared order; an empty cover is constant 0.
class Cover
{
public:
  Cover() = default;
  explicit Cover( VarOrder order, std::vector<Cube> cubes = {} );

  VarOrder const& order() const noexcept { return order_; }
  std::vector<Cube> const& cubes() const noexcept { return cubes_; }
  std::size_t size() const noexcept { return cubes_.size(); }
  bool empty() const noexcept { return cubes_.empty(); }

  void add( Cube cube );

  friend bool operator==( Cover const&, Cover const& ) = default;

private:
  VarOrder order_;
  std::vector<Cube> cubes_;
};

TruthTable table_from_expr( Expr const& expr, VarOrder const& order );
TruthTable table_from_cover( Cover const& cover );
TruthTable complement( TruthTable const& table );

/// One full minterm per 1-row in ascending row order.
Cover canonical_sop( TruthTable const& table );
/// Product of one maxterm per 0-row; constant 1 when there is no 0-row.
Expr canonical_pos( TruthTable const& table );

/// Sum-of-products expression for a cover (constant 0 when empty).
Expr to_expr( Cover const& cover );
Expr to_expr( Cube const& cube, VarOrder const& order );

bool cover_eval( Cover const& cover, BitVector const& input );
bool cover_eval( Cover const& cover, Row row );

using Function = std::variant<TruthTable, Cover, Expr>;

/// Lowest row on which `a` and `b` differ. Tables and covers carry their own
/// order and must agree with each other and with `order` when given. Two bare
/// expressions use `order`, or the union of their variables if none is given.
std::optional<Row> first_difference( Function const& a, Function const& b,
                                     std::optional<VarOrder> const& order = std::nullopt );

bool equivalent( Function const& a, Function const& b, std::optional<VarOrder> const& order = std::nullopt );

} // namespace plakit
