#include "tamarkin/barcode.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tamarkin/errors.hpp"

namespace tamarkin {

namespace {

void validate(int degree, const Interval& bar) {
  if (!std::isfinite(bar.birth) || std::isnan(bar.death) || !(bar.birth < bar.death)) {
    std::ostringstream msg;
    msg << "invalid bar [" << bar.birth << ", " << bar.death << ") in degree " << degree;
    throw InvalidBarcode(msg.str());
  }
}

const std::vector<Interval> kNoBars;

}  // namespace

GradedBarcode::GradedBarcode(Bars bars) {
  for (auto& [degree, list] : bars) {
    for (const auto& bar : list) validate(degree, bar);
    if (list.empty()) continue;
    std::sort(list.begin(), list.end());
    bars_.emplace(degree, std::move(list));
  }
}

void GradedBarcode::add(int degree, Interval bar) {
  validate(degree, bar);
  auto& list = bars_[degree];
  list.insert(std::upper_bound(list.begin(), list.end(), bar), bar);
}

const std::vector<Interval>& GradedBarcode::in_degree(int degree) const {
  auto it = bars_.find(degree);
  return it == bars_.end() ? kNoBars : it->second;
}

std::vector<int> GradedBarcode::degree_list() const {
  std::vector<int> out;
  for (const auto& [degree, list] : bars_) out.push_back(degree);
  return out;
}

std::size_t GradedBarcode::size() const noexcept {
  std::size_t n = 0;
  for (const auto& [degree, list] : bars_) n += list.size();
  return n;
}

GradedBarcode shift(const GradedBarcode& barcode, double c) {
  GradedBarcode::Bars out;
  for (const auto& [degree, list] : barcode.bars()) {
    auto& dst = out[degree];
    for (const auto& bar : list) dst.push_back({bar.birth + c, bar.death + c});
  }
  return GradedBarcode(std::move(out));
}

double torsion_threshold(const GradedBarcode& barcode) {
  double worst = 0.0;
  for (const auto& [degree, list] : barcode.bars()) {
    for (const auto& bar : list) worst = std::max(worst, bar.length());
  }
  return worst;
}

std::map<int, int> hom_dims(const Interval& src, const Interval& tgt) {
  std::map<int, int> out;
  const double s = src.birth;
  if (src.infinite()) {
    if (tgt.infinite()) {
      if (s <= tgt.birth) out[0] = 1;
    } else if (tgt.birth < s && s <= tgt.death) {
      out[1] = 1;
    }
    return out;
  }
  const double b = src.death;
  if (tgt.infinite()) {
    if (s <= tgt.birth && tgt.birth < b) out[0] = 1;
    return out;
  }
  if (s <= tgt.birth && tgt.birth < b && b <= tgt.death) out[0] = 1;
  if (tgt.birth < s && s <= tgt.death && tgt.death < b) out[1] = 1;
  return out;
}

std::map<int, int> q_dims(const GradedBarcode& barcode, double c) {
  std::map<int, int> out;
  const Interval source{-c, kInf};
  for (const auto& [degree, list] : barcode.bars()) {
    for (const auto& bar : list) {
      for (const auto& [k, dim] : hom_dims(source, bar)) out[degree + k] += dim;
    }
  }
  return out;
}

// --- matching ----------------------------------------------------------------

namespace {

bool close(double x, double y, double eps) {
  if (x == kInf || y == kInf) return x == y;
  return std::fabs(x - y) <= eps + kTol;
}

bool short_enough(const Interval& bar, double eps) {
  return !bar.infinite() && bar.length() <= 2.0 * eps + kTol;
}

// Perfect matching of the bipartite graph {first bars + diagonal copies of
// second} x {second bars + diagonal copies of first}, via augmenting paths.
std::optional<std::vector<MatchedPair>> match_degree(const std::vector<Interval>& first,
                                                     const std::vector<Interval>& second,
                                                     double eps, double shift) {
  const std::size_t n1 = first.size();
  const std::size_t n2 = second.size();
  const std::size_t n = n1 + n2;
  // Left node i < n1 is first[i]; left n1 + j is the diagonal copy of second[j].
  // Right node j < n2 is second[j]; right n2 + i is the diagonal copy of first[i].
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < n1; ++i) {
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t j = 0; j < n2; ++j) {
      const double b = second[j].birth + shift;
      const double d = second[j].death + shift;
      if (close(first[i].birth, b, eps) && close(first[i].death, d, eps)) {
        double cost = std::fabs(first[i].birth - b);
        if (!first[i].infinite()) cost = std::max(cost, std::fabs(first[i].death - d));
        ranked.emplace_back(cost, j);
      }
    }
    std::stable_sort(ranked.begin(), ranked.end());
    for (const auto& [cost, j] : ranked) adj[i].push_back(j);
    if (short_enough(first[i], eps)) adj[i].push_back(n2 + i);
  }
  for (std::size_t j = 0; j < n2; ++j) {
    if (short_enough(second[j], eps)) adj[n1 + j].push_back(j);
    for (std::size_t i = 0; i < n1; ++i) adj[n1 + j].push_back(n2 + i);
  }

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> right_owner(n, kNone);
  std::vector<char> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t v : adj[u]) {
      if (visited[v]) continue;
      visited[v] = 1;
      if (right_owner[v] == kNone || augment(right_owner[v])) {
        right_owner[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < n; ++u) {
    visited.assign(n, 0);
    if (!augment(u)) return std::nullopt;
  }

  std::vector<MatchedPair> pairs;
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t u = right_owner[v];
    if (v < n2) {
      if (u < n1) {
        pairs.push_back({u, v});
      } else {
        pairs.push_back({std::nullopt, v});
      }
    } else if (u < n1) {
      pairs.push_back({u, std::nullopt});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const MatchedPair& x, const MatchedPair& y) {
    const auto key = [](const MatchedPair& p) {
      return std::make_pair(p.first.value_or(static_cast<std::size_t>(-1)),
                            p.second.value_or(static_cast<std::size_t>(-1)));
    };
    return key(x) < key(y);
  });
  return pairs;
}

std::set<int> all_degrees(const GradedBarcode& a, const GradedBarcode& b) {
  std::set<int> out;
  for (const auto& [degree, list] : a.bars()) out.insert(degree);
  for (const auto& [degree, list] : b.bars()) out.insert(degree);
  return out;
}

std::optional<Matching> match_all(const GradedBarcode& first, const GradedBarcode& second,
                                  double eps, double shift) {
  Matching out;
  for (int degree : all_degrees(first, second)) {
    auto pairs = match_degree(first.in_degree(degree), second.in_degree(degree), eps, shift);
    if (!pairs) return std::nullopt;
    out.emplace(degree, std::move(*pairs));
  }
  return out;
}

bool infinite_counts_agree(const GradedBarcode& a, const GradedBarcode& b) {
  for (int degree : all_degrees(a, b)) {
    const auto count = [degree](const GradedBarcode& x) {
      const auto& list = x.in_degree(degree);
      return std::count_if(list.begin(), list.end(), [](const Interval& i) { return i.infinite(); });
    };
    if (count(a) != count(b)) return false;
  }
  return true;
}

}  // namespace

InterleavingResult epsilon_interleaved(const GradedBarcode& first, const GradedBarcode& second,
                                       double eps) {
  if (eps < 0) throw std::invalid_argument("epsilon_interleaved: eps must be >= 0");
  auto matching = match_all(first, second, eps, 0.0);
  if (!matching) return {};
  return {true, std::move(*matching)};
}

std::optional<InterleavingWitness> optimal_interleaving(const GradedBarcode& first,
                                                        const GradedBarcode& second,
                                                        ShiftMode mode) {
  if (!infinite_counts_agree(first, second)) return std::nullopt;

  // Endpoint differences x - y between same-kind endpoints in the same degree.
  std::vector<double> diffs;
  std::vector<double> halves;
  for (int degree : all_degrees(first, second)) {
    const auto& xs = first.in_degree(degree);
    const auto& ys = second.in_degree(degree);
    for (const auto& x : xs) {
      for (const auto& y : ys) {
        if (x.infinite() != y.infinite()) continue;
        diffs.push_back(x.birth - y.birth);
        if (!x.infinite()) diffs.push_back(x.death - y.death);
      }
    }
    for (const auto& list : {std::cref(xs), std::cref(ys)}) {
      for (const auto& bar : list.get()) {
        if (!bar.infinite()) halves.push_back(bar.length() / 2.0);
      }
    }
  }
  std::sort(diffs.begin(), diffs.end());
  diffs.erase(std::unique(diffs.begin(), diffs.end()), diffs.end());

  std::vector<double> candidates{0.0};
  candidates.insert(candidates.end(), halves.begin(), halves.end());
  switch (mode) {
    case ShiftMode::kNone:
      for (double d : diffs) candidates.push_back(std::fabs(d));
      break;
    case ShiftMode::kBounded:
      for (double d : diffs) candidates.push_back(std::fabs(d) / 2.0);
      [[fallthrough]];
    case ShiftMode::kFree:
      for (std::size_t i = 0; i < diffs.size(); ++i) {
        for (std::size_t j = i + 1; j < diffs.size(); ++j) {
          candidates.push_back((diffs[j] - diffs[i]) / 2.0);
        }
      }
      break;
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Smallest feasible shift for a given eps, if any. The feasible shift set
  // is a finite union of closed intervals with endpoints d +- eps (and +-eps
  // in the bounded mode), so probing those endpoints is exact.
  const auto feasible_shift = [&](double eps) -> std::optional<double> {
    std::vector<double> shifts{0.0};
    if (mode != ShiftMode::kNone) {
      for (double d : diffs) {
        shifts.push_back(d - eps);
        shifts.push_back(d + eps);
      }
      if (mode == ShiftMode::kBounded) {
        shifts.push_back(-eps);
        shifts.push_back(eps);
      }
    }
    std::sort(shifts.begin(), shifts.end(),
              [](double a, double b) { return std::make_pair(std::fabs(a), a) < std::make_pair(std::fabs(b), b); });
    for (double c : shifts) {
      if (mode == ShiftMode::kBounded && std::fabs(c) > eps + kTol) continue;
      if (match_all(first, second, eps, c)) return c;
    }
    return std::nullopt;
  };

  std::size_t lo = 0;
  std::size_t hi = candidates.size();
  std::optional<InterleavingWitness> best;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto c = feasible_shift(candidates[mid])) {
      best = InterleavingWitness{candidates[mid], *c};
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (!best) throw std::logic_error("optimal_interleaving: no feasible candidate");
  return best;
}

double dprime_distance(const GradedBarcode& first, const GradedBarcode& second) {
  const auto w = optimal_interleaving(first, second, ShiftMode::kBounded);
  return w ? 2.0 * w->eps : kInf;
}

double shifted_dprime(const GradedBarcode& first, const GradedBarcode& second) {
  const auto w = optimal_interleaving(first, second, ShiftMode::kFree);
  return w ? 2.0 * w->eps : kInf;
}

double interleaving_distance(const GradedBarcode& first, const GradedBarcode& second) {
  const auto w = optimal_interleaving(first, second, ShiftMode::kNone);
  return w ? w->eps : kInf;
}

DistanceBracket distance_bracket(const GradedBarcode& first, const GradedBarcode& second) {
  const double d = dprime_distance(first, second);
  return {d, d / 2.0, d};
}

// --- convolution ---------------------------------------------------------------

GradedBarcode convolve(const GradedBarcode& first, const GradedBarcode& second) {
  GradedBarcode out;
  const auto emit = [&out](int degree, double birth, double death) {
    if (birth < death) out.add(degree, {birth, death});
  };
  for (const auto& [p, xs] : first.bars()) {
    for (const auto& [q, ys] : second.bars()) {
      for (const auto& x : xs) {
        for (const auto& y : ys) {
          const double a = x.birth, b = x.death, c = y.birth, d = y.death;
          if (x.infinite() && y.infinite()) {
            emit(p + q, a + c, kInf);
          } else if (y.infinite()) {
            emit(p + q, a + c, b + c);
          } else if (x.infinite()) {
            emit(p + q, a + c, a + d);
          } else {
            emit(p + q, a + c, std::min(a + d, b + c));
            emit(p + q + 1, std::max(a + d, b + c), b + d);
          }
        }
      }
    }
  }
  return out;
}

// --- Cauchy limits -----------------------------------------------------------------

std::vector<double> CauchyBarcodeSequence::tail_sums() const {
  const std::size_t n = items.size();
  std::vector<double> out(n, 0.0);
  if (n == 0) return out;
  double acc = 0.0;
  if (tail.kind == CauchyTail::Kind::kGeometric && !bounds.empty()) {
    acc = bounds.back() * tail.ratio / (1.0 - tail.ratio);
  }
  out[n - 1] = acc;
  for (std::size_t k = n - 1; k-- > 0;) {
    acc += bounds.at(k);
    out[k] = acc;
  }
  return out;
}

CauchyLimit cauchy_limit(const CauchyBarcodeSequence& sequence) {
  const auto& items = sequence.items;
  if (items.empty()) throw NotCauchy("empty sequence");
  if (sequence.bounds.size() + 1 != items.size()) {
    throw NotCauchy("expected one bound per consecutive pair");
  }
  for (double a : sequence.bounds) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw NotCauchy("bounds must be finite and >= 0");
  }
  const bool geometric = sequence.tail.kind == CauchyTail::Kind::kGeometric;
  if (geometric && !(sequence.tail.ratio > 0.0 && sequence.tail.ratio < 1.0)) {
    throw NotCauchy("geometric tail ratio must lie in (0,1)");
  }

  CauchyLimit result;
  for (std::size_t n = 0; n + 1 < items.size(); ++n) {
    auto check = epsilon_interleaved(items[n], items[n + 1], sequence.bounds[n]);
    if (!check.interleaved) {
      std::ostringstream msg;
      msg << "pair (" << n << ", " << n + 1 << ") is not " << sequence.bounds[n] << "-interleaved";
      throw NotCauchy(msg.str());
    }
    result.matchings.push_back(std::move(check.witness));
  }

  const auto& last = items.back();
  const double factor = geometric ? sequence.tail.ratio / (1.0 - sequence.tail.ratio) : 0.0;
  for (const auto& [degree, list] : last.bars()) {
    for (std::size_t j = 0; j < list.size(); ++j) {
      Interval bar = list[j];
      if (geometric && items.size() >= 2) {
        const auto& pairs = result.matchings.back().at(degree);
        auto it = std::find_if(pairs.begin(), pairs.end(),
                               [j](const MatchedPair& p) { return p.second == j && p.first; });
        if (it != pairs.end()) {
          const Interval& prev = items[items.size() - 2].in_degree(degree)[*it->first];
          bar.birth += (bar.birth - prev.birth) * factor;
          if (!bar.infinite()) bar.death += (bar.death - prev.death) * factor;
        }
      }
      if (bar.infinite() || bar.length() > kTol) result.limit.add(degree, bar);
    }
  }

  const auto sums = sequence.tail_sums();
  auto& cert = result.certificate;
  cert.holds = true;
  for (std::size_t n = 0; n < items.size(); ++n) {
    const double achieved = dprime_distance(items[n], result.limit);
    const double bound = kLimitConstant * sums[n];
    cert.achieved.push_back(achieved);
    cert.bounds.push_back(bound);
    if (!(achieved <= bound + kTol)) cert.holds = false;
  }
  return result;
}

}  // namespace tamarkin
