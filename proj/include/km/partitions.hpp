#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "km/common.hpp"

namespace km {

/// A weakly decreasing vector of nonnegative integers of fixed length n.
/// Value type; ordered lexicographically so it can key ordered maps.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);
  static std::optional<Partition> try_make(std::vector<int> parts);
  static Partition zero(int n) { return Partition(std::vector<int>(n, 0)); }
  static Partition parse(const std::string& text, int n = -1);  // "2,1,0"

  int size() const { return static_cast<int>(parts_.size()); }
  int operator[](int j) const { return parts_[j]; }
  int weight() const;
  const std::vector<int>& parts() const { return parts_; }
  std::string to_string() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// A subset J of coordinate indices (0-based) with a sign per member.
struct SignedSet {
  std::vector<int> members;  // strictly increasing
  std::vector<int> signs;    // +1 or -1, aligned with members
  int size() const { return static_cast<int>(members.size()); }
  std::string to_string() const;  // e.g. "{+1,-3}" (1-based for readability)
};

/// Partial order by comparison of all leading partial sums.
bool dominance_leq(const Partition& mu, const Partition& lam);
bool dominance_lt(const Partition& mu, const Partition& lam);

/// All partitions mu with mu <= lam (lam included), sorted by (weight, lex);
/// that ordering is a linear extension of the dominance order.
std::vector<Partition> down_set(const Partition& lam);

/// All partitions of length n and weight <= wmax, sorted by (weight, lex).
std::vector<Partition> partitions_up_to_weight(int n, int wmax);

/// lam + sum_{j in J} sign_j e_j, or nullopt when the result leaves the cone.
std::optional<Partition> add_move(const Partition& lam, const SignedSet& s);

/// All signed sets with 0 <= |J| <= r (cached per (n, r)).
const std::vector<SignedSet>& all_signed_sets(int n, int r);

/// The signed sets s among all_signed_sets(n, r) with lam + e_s still a partition.
std::vector<SignedSet> signed_moves(const Partition& lam, int r);

/// All subsets of the given base set with the given cardinality.
std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& base, int k);

}  // namespace km
