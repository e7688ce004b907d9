#include "km/partitions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace km {

namespace {

bool weakly_decreasing_nonneg(const std::vector<int>& v) {
  for (size_t j = 0; j < v.size(); ++j) {
    if (v[j] < 0) return false;
    if (j > 0 && v[j] > v[j - 1]) return false;
  }
  return true;
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (!weakly_decreasing_nonneg(parts_))
    throw InvalidParameterError("Partition: parts must be weakly decreasing and nonnegative");
}

std::optional<Partition> Partition::try_make(std::vector<int> parts) {
  if (!weakly_decreasing_nonneg(parts)) return std::nullopt;
  Partition p;
  p.parts_ = std::move(parts);
  return p;
}

Partition Partition::parse(const std::string& text, int n) {
  std::vector<int> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw InvalidParameterError("Partition::parse: bad token '" + tok + "'");
    parts.push_back(v);
  }
  if (n >= 0) {
    while (static_cast<int>(parts.size()) < n) parts.push_back(0);
    if (static_cast<int>(parts.size()) != n)
      throw InvalidParameterError("Partition::parse: more parts than n");
  }
  return Partition(std::move(parts));
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Partition::to_string() const {
  std::string out;
  for (size_t j = 0; j < parts_.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(parts_[j]);
  }
  return out;
}

std::string SignedSet::to_string() const {
  std::string out = "{";
  for (int i = 0; i < size(); ++i) {
    if (i) out += ',';
    out += (signs[i] > 0 ? '+' : '-');
    out += std::to_string(members[i] + 1);
  }
  return out + "}";
}

bool dominance_leq(const Partition& mu, const Partition& lam) {
  if (mu.size() != lam.size())
    throw InvalidParameterError("dominance_leq: partitions of different length");
  long long su = 0, sl = 0;
  for (int j = 0; j < mu.size(); ++j) {
    su += mu[j];
    sl += lam[j];
    if (su > sl) return false;
  }
  return true;
}

bool dominance_lt(const Partition& mu, const Partition& lam) {
  return mu != lam && dominance_leq(mu, lam);
}

namespace {

// Enumerate weakly decreasing nonnegative vectors of the given length with
// first part <= cap and total weight <= wmax.
void enumerate_rec(int length, int cap, int wmax, std::vector<int>& acc,
                   std::vector<Partition>& out) {
  if (static_cast<int>(acc.size()) == length) {
    out.push_back(Partition(acc));
    return;
  }
  for (int v = 0; v <= std::min(cap, wmax); ++v) {
    acc.push_back(v);
    enumerate_rec(length, v, wmax - v, acc, out);
    acc.pop_back();
  }
}

void sort_by_weight_then_lex(std::vector<Partition>& v) {
  std::sort(v.begin(), v.end(), [](const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a < b;
  });
}

}  // namespace

std::vector<Partition> partitions_up_to_weight(int n, int wmax) {
  std::vector<Partition> out;
  std::vector<int> acc;
  enumerate_rec(n, wmax, wmax, acc, out);
  sort_by_weight_then_lex(out);
  return out;
}

std::vector<Partition> down_set(const Partition& lam) {
  // Direct enumeration with the obvious a priori bounds (first part and
  // weight cannot exceed those of lam), then a dominance filter.  Note that
  // single-box removals alone would not reach every dominated partition:
  // (1,1) <= (2,0) but (1,1) is not obtained from (2,0) by removing boxes.
  std::vector<Partition> out;
  std::vector<int> acc;
  std::vector<Partition> candidates;
  enumerate_rec(lam.size(), lam.size() ? lam[0] : 0, lam.weight(), acc, candidates);
  for (const Partition& mu : candidates)
    if (dominance_leq(mu, lam)) out.push_back(mu);
  sort_by_weight_then_lex(out);
  return out;
}

std::optional<Partition> add_move(const Partition& lam, const SignedSet& s) {
  std::vector<int> parts = lam.parts();
  for (int i = 0; i < s.size(); ++i) parts[s.members[i]] += s.signs[i];
  return Partition::try_make(std::move(parts));
}

std::vector<std::vector<int>> subsets_of_size(const std::vector<int>& base, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > static_cast<int>(base.size())) return out;
  std::vector<int> idx(k);
  // standard combination odometer
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int m = static_cast<int>(base.size());
  while (true) {
    std::vector<int> sub(k);
    for (int i = 0; i < k; ++i) sub[i] = base[idx[i]];
    out.push_back(std::move(sub));
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

const std::vector<SignedSet>& all_signed_sets(int n, int r) {
  static std::map<std::pair<int, int>, std::vector<SignedSet>> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto key = std::make_pair(n, r);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  std::vector<SignedSet> sets;
  std::vector<int> base(n);
  for (int j = 0; j < n; ++j) base[j] = j;
  for (int k = 0; k <= std::min(n, r); ++k) {
    for (const auto& members : subsets_of_size(base, k)) {
      for (int bits = 0; bits < (1 << k); ++bits) {
        SignedSet s;
        s.members = members;
        s.signs.resize(k);
        for (int i = 0; i < k; ++i) s.signs[i] = (bits >> i) & 1 ? -1 : 1;
        sets.push_back(std::move(s));
      }
    }
  }
  return cache.emplace(key, std::move(sets)).first->second;
}

std::vector<SignedSet> signed_moves(const Partition& lam, int r) {
  std::vector<SignedSet> out;
  for (const SignedSet& s : all_signed_sets(lam.size(), r))
    if (add_move(lam, s)) out.push_back(s);
  return out;
}

}  // namespace km
