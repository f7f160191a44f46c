#pragma once

// Brute-force ideal membership for homogeneous ideals.
//
// The degree-d component of the two-sided ideal is spanned by u*rel*v with
// |u| + deg(rel) + |v| = d. The oracle row-reduces that spanning set
// exactly over Q(s) and never consults the rewriting engine. When every
// relation is homogeneous in each letter separately (true for all
// presentations used here) the component splits further by letter content,
// and each block is eliminated on its own.

#include "qserre/freealg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qserre {

class OracleCapError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

struct HomogeneousSlice {
  int degree;
  NcPoly part;
};

/// Components of p by word length, ascending; zero gives an empty list.
std::vector<HomogeneousSlice> split_homogeneous(const NcPoly& p);

class IdealOracle {
 public:
  static constexpr int kDefaultCap = 8;

  IdealOracle(AlphabetPtr alphabet, std::vector<NcPoly> relations, int degree_cap = kDefaultCap);
  ~IdealOracle();
  IdealOracle(const IdealOracle&) = delete;
  IdealOracle& operator=(const IdealOracle&) = delete;

  const AlphabetPtr& alphabet() const { return alphabet_; }
  int degree_cap() const { return cap_; }
  bool multigraded() const { return multigraded_; }

  /// Membership verdict per homogeneous slice of p (ascending degree).
  /// Throws OracleCapError if a slice is above the cap.
  std::vector<bool> member_slices(const NcPoly& p) const;
  bool member(const NcPoly& p) const;

  /// dim of the degree-d component of the quotient algebra.
  std::uint64_t quotient_dimension(int degree) const;

  /// Specializes s at `points` random rationals (ratios of distinct small
  /// primes, never 0 or +-1) and tests membership over Q there.
  /// false means p is certainly not a member.
  bool randomized_precheck(const NcPoly& p, int points, std::uint64_t seed) const;

 private:
  struct Block;
  using BlockKey = std::vector<int>;

  BlockKey key_of(const Word& w) const;
  const Block& block(int degree, const BlockKey& key) const;
  std::vector<std::vector<int>> keys_of_degree(int degree) const;
  void check_cap(int degree) const;

  AlphabetPtr alphabet_;
  std::vector<NcPoly> relations_;
  int cap_;
  bool multigraded_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, BlockKey>, std::shared_ptr<const Block>> blocks_;
};

}  // namespace qserre
