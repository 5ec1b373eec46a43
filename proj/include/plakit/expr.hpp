#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace plakit
{

/// Ordered list of distinct variable names. Position 0 is the leftmost
/// (most significant) bit of a truth-table row index.
class VarOrder
{
public:
  VarOrder() = default;
  explicit VarOrder( std::vector<std::string> names );
  VarOrder( std::initializer_list<std::string> names ) : VarOrder( std::vector<std::string>( names ) ) {}

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  std::string const& operator[]( std::size_t i ) const { return names_[i]; }
  std::vector<std::string> const& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of( std::string_view name ) const;
  bool contains( std::string_view name ) const { return index_of( name ).has_value(); }

  /// Appends `name` unless already present.
  void add( std::string const& name );

  auto begin() const noexcept { return names_.begin(); }
  auto end() const noexcept { return names_.end(); }

  friend bool operator==( VarOrder const&, VarOrder const& ) = default;

private:
  std::vector<std::string> names_;
};

/// True if `name` is a legal variable name: a letter followed by letters, digits or '_'.
bool is_identifier( std::string_view name );

enum class expr_kind
{
  constant,
  variable,
  negation,
  conjunction,
  disjunction
};

/// Boolean expression tree. Built only through the factories, which keep
/// the representation normalized: no double negation, And/Or nodes are
/// flattened and always have at least two children.
class Expr
{
public:
  static Expr constant( bool value );
  static Expr variable( std::string name );
  /// NOT; `negate(negate(e))` is `e`.
  static Expr negate( Expr child );
  /// AND of `children`. Nested conjunctions are flattened; one child yields
  /// the child itself and zero children yield constant 1.
  static Expr conjunction( std::vector<Expr> children );
  /// OR of `children`, flattened; zero children yield constant 0.
  static Expr disjunction( std::vector<Expr> children );

  expr_kind kind() const noexcept { return kind_; }
  bool value() const noexcept { return value_; }
  std::string const& name() const noexcept { return name_; }
  std::vector<Expr> const& children() const noexcept { return children_; }

  friend bool operator==( Expr const&, Expr const& ) = default;

private:
  Expr() = default;

  expr_kind kind_ = expr_kind::constant;
  bool value_ = false;
  std::string name_;
  std::vector<Expr> children_;
};

struct ParseOptions
{
  /// Identifiers span letters, digits and '_' and AND must be written
  /// explicitly. Off by default: every letter is its own variable and
  /// juxtaposition means AND.
  bool multi_letter = false;
};

/// Parses the apostrophe notation: `+` OR; juxtaposition, `*`, `.` or `·` AND;
/// postfix `'` or prefix `!` NOT; parentheses; constants `0` and `1`.
/// Throws parse_error with the byte offset of the problem.
Expr parse_expression( std::string_view text, ParseOptions const& options = {} );

/// Canonical text with minimal parentheses. Uses juxtaposition for AND when
/// every variable name is a single letter, `*` otherwise.
std::string format( Expr const& expr );

using Assignment = std::map<std::string, bool, std::less<>>;

/// Throws argument_error on a variable missing from `assignment`.
bool eval( Expr const& expr, Assignment const& assignment );

/// Distinct variables in left-to-right first-appearance order.
VarOrder variables( Expr const& expr );

struct Equation
{
  std::string name;
  Expr expr;
};

/// Reads `NAME = expr` lines. `#` starts a comment; blank lines are skipped.
/// Throws format_error naming the offending line.
std::vector<Equation> parse_equations( std::string_view text, ParseOptions const& options = {} );

/// Union of the equations' variables in first-appearance order.
VarOrder variables( std::vector<Equation> const& equations );

} // namespace plakit
