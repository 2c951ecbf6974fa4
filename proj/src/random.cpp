#include "tamarkin/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tamarkin {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

struct Bar {
  int degree;
  Interval interval;
};

// Collects generators, then emits a complex with a permuted generator order.
class Builder {
 public:
  struct Slot {
    std::size_t birth;
    std::optional<std::size_t> death;
  };

  Slot add_bar(const Bar& bar) {
    Slot s{push(bar.degree, bar.interval.birth), std::nullopt};
    if (!bar.interval.infinite()) {
      s.death = push(bar.degree + 1, bar.interval.death);
      edges_.emplace_back(*s.death, s.birth);
    }
    return s;
  }

  void add_cancelling(int degree, double grade) {
    const std::size_t u = push(degree, grade);
    const std::size_t w = push(degree + 1, grade);
    edges_.emplace_back(w, u);
  }

  void shuffle(Rng& rng) { std::shuffle(perm_.begin(), perm_.end(), rng); }

  std::size_t at(std::size_t i) const { return perm_[i]; }

  FilteredComplex build(PrimeField field) const {
    std::vector<Generator> gens(gens_.size());
    for (std::size_t i = 0; i < gens_.size(); ++i) gens[perm_[i]] = gens_[i];
    Matrix d(field, gens.size(), gens.size());
    for (const auto& [row, col] : edges_) d(perm_[row], perm_[col]) = 1;
    return FilteredComplex(field, std::move(gens), std::move(d));
  }

 private:
  std::size_t push(int degree, double grade) {
    gens_.push_back({degree, grade});
    perm_.push_back(perm_.size());
    return gens_.size() - 1;
  }

  std::vector<Generator> gens_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::size_t> perm_;
};

}  // namespace

GradedBarcode random_barcode(Rng& rng, const RandomBarcodeOptions& options) {
  GradedBarcode out;
  const int count = uniform(rng, 0, options.max_bars);
  for (int i = 0; i < count; ++i) {
    const int degree = uniform(rng, 0, std::max(0, options.degrees - 1));
    const double birth = options.step * uniform(rng, -options.span / 2, options.span / 2 - 1);
    if (coin(rng, options.ray_probability)) {
      out.add(degree, {birth, kInf});
    } else {
      out.add(degree, {birth, birth + options.step * uniform(rng, 1, options.span / 2)});
    }
  }
  return out;
}

InterleavingCertificate random_certified_pair(Rng& rng, PrimeField field, const RandomPairOptions& options) {
  constexpr double step = 0.25;
  double a = step * uniform(rng, 0, 4);
  double b = step * uniform(rng, 0, 4);
  if (options.equal_shift) a = b = *options.equal_shift;
  const int lo = -static_cast<int>(std::floor(a / step + 1e-9));
  const int hi = static_cast<int>(std::floor(b / step + 1e-9));
  const int short_max = static_cast<int>(std::floor((a + b) / step + 1e-9));

  const int matched = uniform(rng, 0, options.max_bars);
  const int free_f = short_max > 0 ? uniform(rng, 0, options.max_bars - matched) : 0;
  const int free_g = short_max > 0 ? uniform(rng, 0, options.max_bars - matched) : 0;

  std::vector<std::pair<Bar, Bar>> pairs;
  for (int i = 0; i < matched; ++i) {
    const int degree = uniform(rng, 0, 1);
    const double p = step * uniform(rng, -8, 7);
    const bool ray = coin(rng, 0.3);
    const double q = ray ? kInf : p + step * uniform(rng, 1, 12);
    while (true) {
      const double p2 = p + step * uniform(rng, lo, hi);
      const double q2 = ray ? kInf : q + step * uniform(rng, lo, hi);
      if (p2 < q2) {
        pairs.push_back({{degree, {p, q}}, {degree, {p2, q2}}});
        break;
      }
    }
  }
  const auto short_bar = [&](void) -> Bar {
    const double p = step * uniform(rng, -8, 7);
    return {uniform(rng, 0, 1), {p, p + step * uniform(rng, 1, short_max)}};
  };

  Builder fb, gb;
  std::vector<std::pair<Builder::Slot, Builder::Slot>> slots;
  for (const auto& [x, y] : pairs) slots.emplace_back(fb.add_bar(x), gb.add_bar(y));
  for (int i = 0; i < free_f; ++i) fb.add_bar(short_bar());
  for (int i = 0; i < free_g; ++i) gb.add_bar(short_bar());
  for (int i = uniform(rng, 0, options.max_cancelling); i > 0; --i) {
    fb.add_cancelling(uniform(rng, -1, 1), step * uniform(rng, -8, 8));
  }
  for (int i = uniform(rng, 0, options.max_cancelling); i > 0; --i) {
    gb.add_cancelling(uniform(rng, -1, 1), step * uniform(rng, -8, 8));
  }
  if (options.shuffle) {
    fb.shuffle(rng);
    gb.shuffle(rng);
  }
  const FilteredComplex f = fb.build(field);
  const FilteredComplex g = gb.build(field);
  Matrix alpha(field, g.size(), f.size());
  Matrix beta(field, f.size(), g.size());
  for (const auto& [sf, sg] : slots) {
    alpha(gb.at(sg.birth), fb.at(sf.birth)) = 1;
    beta(fb.at(sf.birth), gb.at(sg.birth)) = 1;
    if (sf.death) {
      alpha(gb.at(*sg.death), fb.at(*sf.death)) = 1;
      beta(fb.at(*sf.death), gb.at(*sg.death)) = 1;
    }
  }
  return make_certificate(ChainMap(f, g, a, std::move(alpha)), ChainMap(g, f, b, std::move(beta)));
}

CauchyBarcodeSequence random_cauchy_sequence(Rng& rng, int length, int max_bars, GradedBarcode* limit) {
  struct Moving {
    int degree;
    double birth, death;
    int rb, rd;  // offsets in units of 1/2
  };
  std::vector<Moving> bars;
  const int count = uniform(rng, 1, max_bars);
  for (int i = 0; i < count; ++i) {
    const double p = 0.25 * uniform(rng, -8, 8);
    const bool ray = coin(rng, 0.3);
    bars.push_back({uniform(rng, 0, 1), p, ray ? kInf : p + 0.25 * uniform(rng, 10, 24), uniform(rng, -2, 2),
                    uniform(rng, -2, 2)});
  }
  std::vector<std::pair<int, double>> vanishing;
  for (int i = uniform(rng, 0, 2); i > 0; --i) vanishing.emplace_back(uniform(rng, 0, 1), 0.25 * uniform(rng, -8, 8));

  CauchyBarcodeSequence seq;
  for (int n = 0; n < length; ++n) {
    const double s = std::ldexp(1.0, -n);
    GradedBarcode item;
    for (const auto& m : bars) {
      const double birth = m.birth + 0.5 * m.rb * s;
      const double death = m.death == kInf ? kInf : m.death + 0.5 * m.rd * s;
      item.add(m.degree, {birth, death});
    }
    for (const auto& [degree, x] : vanishing) item.add(degree, {x, x + s});
    seq.items.push_back(std::move(item));
    if (n + 1 < length) seq.bounds.push_back(std::ldexp(1.0, -(n + 1)));
  }
  seq.tail = {CauchyTail::Kind::kGeometric, 0.5};
  if (limit) {
    *limit = GradedBarcode();
    for (const auto& m : bars) limit->add(m.degree, {m.birth, m.death});
  }
  return seq;
}

}  // namespace tamarkin
