#pragma once

#include <plakit/logic.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace plakit
{

/// Prime generation refuses wider functions (the tabular method grows as 3^n).
inline constexpr std::size_t max_minimize_vars = 16;

/// Exact covering (Petrick) runs only within both bounds; otherwise greedy.
inline constexpr std::size_t exact_cover_max_primes = 24;
inline constexpr std::size_t exact_cover_max_minterms = 64;

struct MinimizeSpec
{
  VarOrder order;
  std::vector<Row> on_set;
  std::vector<Row> dc_set;

  /// Throws argument_error if the sets overlap, an index is out of range or
  /// the order is wider than max_minimize_vars.
  void validate() const;
};

enum class cover_method
{
  exact,
  greedy
};

/// Method minimum_cover uses for the given number of useful primes and ON minterms.
cover_method select_cover_method( std::size_t primes, std::size_t on_minterms ) noexcept;

/// All prime implicants of ON ∪ DC by iterated pairwise merging, sorted by
/// descending absent-literal count, then by pattern.
std::vector<Cube> prime_implicants( MinimizeSpec const& spec );

/// Subset of `primes` covering every ON minterm. Exact minimum cardinality
/// within the exact_cover_* bounds, greedy largest-gain selection otherwise.
/// Ties go to the smallest cube in prime order. Throws argument_error if the
/// primes leave an ON minterm uncovered.
Cover minimum_cover( std::vector<Cube> const& primes, MinimizeSpec const& spec );

Cover minimize( MinimizeSpec const& spec );
/// Rows in `dc` are don't-cares regardless of their table value.
Cover minimize( TruthTable const& table, std::vector<Row> const& dc = {} );
Cover minimize( Cover const& cover, std::vector<Row> const& dc = {} );

struct NamedCover
{
  std::string name;
  Cover cover;
};

struct OutputSelection
{
  std::string name;
  std::vector<std::size_t> terms;
};

/// Shared pool of product terms feeding several named outputs.
class MultiOutputCover
{
public:
  MultiOutputCover() = default;
  /// Throws argument_error on duplicate pool cubes, bad widths, duplicate
  /// output names or out-of-range term indices.
  MultiOutputCover( VarOrder order, std::vector<Cube> pool, std::vector<OutputSelection> outputs );

  VarOrder const& order() const noexcept { return order_; }
  std::vector<Cube> const& pool() const noexcept { return pool_; }
  std::vector<OutputSelection> const& outputs() const noexcept { return outputs_; }

  /// The single-output cover of output `o`, cubes in selection order.
  Cover output_cover( std::size_t o ) const;

  friend bool operator==( MultiOutputCover const&, MultiOutputCover const& ) = default;

private:
  VarOrder order_;
  std::vector<Cube> pool_;
  std::vector<OutputSelection> outputs_;
};

inline bool operator==( OutputSelection const& a, OutputSelection const& b )
{
  return a.name == b.name && a.terms == b.terms;
}

/// Pools identical cubes across outputs in first-use order.
MultiOutputCover share_terms( std::vector<NamedCover> const& covers );

} // namespace plakit
