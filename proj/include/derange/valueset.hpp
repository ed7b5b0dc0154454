#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "derangements.hpp"
#include "parallel.hpp"
#include "primes.hpp"
#include "report.hpp"

namespace derange {

inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 32;

/// Polynomial over F_q, q prime, constant term first.
class DensePolynomial {
 public:
  DensePolynomial(std::uint64_t q, std::vector<std::uint64_t> coefficients) : q_(q), c_(std::move(coefficients)) {
    if (!is_prime(q) || q >= kMaxFieldSize) throw std::invalid_argument("DensePolynomial: modulus must be a prime below 2^32");
    for (auto& x : c_) x %= q_;
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::uint64_t modulus() const { return q_; }
  const std::vector<std::uint64_t>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  bool is_zero() const { return c_.empty(); }

  std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (acc * x + *it) % q_;
    return acc;
  }

  /// f(a x + b)
  DensePolynomial substitute_affine(std::uint64_t a, std::uint64_t b) const {
    a %= q_;
    b %= q_;
    std::vector<std::uint64_t> out(c_.size(), 0);
    std::vector<std::uint64_t> pw{1};  // (a x + b)^i
    for (std::size_t i = 0; i < c_.size(); ++i) {
      for (std::size_t j = 0; j < pw.size(); ++j) out[j] = (out[j] + c_[i] * pw[j]) % q_;
      std::vector<std::uint64_t> next(pw.size() + 1, 0);
      for (std::size_t j = 0; j < pw.size(); ++j) {
        next[j] = (next[j] + pw[j] * b) % q_;
        next[j + 1] = (next[j + 1] + pw[j] * a) % q_;
      }
      pw = std::move(next);
    }
    return {q_, std::move(out)};
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      if (c_[i] != 1 || i == 0) s += std::to_string(c_[i]);
      if (i >= 1) s += "T";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  std::uint64_t q_;
  std::vector<std::uint64_t> c_;
};

/// |f(F_q)| by evaluating at every point. With `required_degree` set, a
/// polynomial of smaller degree (in particular 0) is rejected.
inline std::uint64_t image_size(const DensePolynomial& f, int required_degree = -1) {
  if (required_degree >= 1 && f.degree() != required_degree) {
    throw std::invalid_argument("image_size: polynomial does not have degree " + std::to_string(required_degree));
  }
  const std::uint64_t q = f.modulus();
  std::vector<bool> seen(q, false);
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < q; ++x) {
    const auto y = f(x);
    if (!seen[y]) seen[y] = true, ++count;
  }
  return count;
}

/// 1 - D_n/n!, the expected image density of a general degree-n map.
inline ExactRational bsd_reference(unsigned n) {
  return ExactRational(1) - derangement_proportion(n, Variant::Symmetric);
}

struct ImageStats {
  std::uint64_t q = 0;
  unsigned n = 0;
  std::vector<std::uint64_t> coefficients;
  std::uint64_t image_size = 0;
  ExactRational proportion;
  ExactRational reference;
  ExactRational deviation;  // proportion - reference

  Json to_json() const {
    return {{"coefficients", coefficients}, {"image_size", image_size},
            {"proportion", proportion.str()}, {"deviation", deviation.str()},
            {"deviation_approx", deviation.approx()}};
  }
};

inline ImageStats image_stats(const DensePolynomial& f, unsigned n) {
  ImageStats s;
  s.q = f.modulus();
  s.n = n;
  s.coefficients = f.coefficients();
  s.image_size = image_size(f, static_cast<int>(n));
  s.proportion = ExactRational(big(s.image_size), big(s.q));
  s.reference = bsd_reference(n);
  s.deviation = s.proportion - s.reference;
  return s;
}

struct ExperimentConfig {
  std::uint64_t q = 101;
  unsigned n = 1;
  unsigned trials = 1;
  std::uint64_t seed = 1;
  unsigned band_k = 3;  // |deviation| <= band_k / sqrt(q) counts as in-band
  unsigned workers = 1;
};

struct ExperimentAggregate {
  ExactRational mean_deviation;
  ExactRational max_abs_deviation;
  std::size_t within_band = 0;
  ExactRational within_band_fraction;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<ImageStats> samples;
  ExperimentAggregate aggregate;
  std::vector<std::string> warnings;
};

/// |d| <= k / sqrt(q), decided exactly as d^2 q <= k^2.
inline bool within_band(const ExactRational& deviation, unsigned k, std::uint64_t q) {
  return deviation * deviation * ExactRational(big(q)) <= ExactRational(static_cast<long>(k) * k);
}

/// Samples monic degree-n polynomials with uniform lower coefficients.
/// Coefficients are drawn sequentially from one mt19937_64 stream so the
/// samples depend only on (q, n, trials, seed).
inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (!is_prime(cfg.q) || cfg.q >= kMaxFieldSize) throw std::invalid_argument("run_experiment: q must be a prime below 2^32");
  if (cfg.n < 1) throw std::invalid_argument("run_experiment: degree must be >= 1");
  ExperimentResult res;
  res.config = cfg;
  if (cfg.q <= cfg.n) res.warnings.push_back("q <= n: maps of this degree are far from general");

  std::mt19937_64 rng(cfg.seed);
  std::vector<DensePolynomial> polys;
  polys.reserve(cfg.trials);
  for (unsigned t = 0; t < cfg.trials; ++t) {
    std::vector<std::uint64_t> c(cfg.n + 1);
    for (unsigned i = 0; i < cfg.n; ++i) c[i] = rng() % cfg.q;
    c[cfg.n] = 1;
    polys.emplace_back(cfg.q, std::move(c));
  }
  res.samples = parallel_map<ImageStats>(polys.size(), cfg.workers,
                                         [&](std::size_t i) { return image_stats(polys[i], cfg.n); });

  ExactRational sum(0), max_abs(0);
  for (const auto& s : res.samples) {
    sum += s.deviation;
    max_abs = max(max_abs, s.deviation.abs());
    res.aggregate.within_band += within_band(s.deviation, cfg.band_k, cfg.q);
  }
  if (!res.samples.empty()) {
    const ExactRational count(static_cast<long>(res.samples.size()));
    res.aggregate.mean_deviation = sum / count;
    res.aggregate.within_band_fraction = ExactRational(static_cast<long>(res.aggregate.within_band)) / count;
  }
  res.aggregate.max_abs_deviation = max_abs;
  return res;
}

inline VerificationReport experiment_report(const ExperimentResult& r) {
  VerificationReport rep;
  rep.claim_id = "ffield";
  rep.parameters = {{"q", r.config.q}, {"n", r.config.n}, {"trials", r.config.trials},
                    {"seed", r.config.seed}, {"band_k", r.config.band_k}};
  for (const auto& s : r.samples) rep.witnesses.push_back(s.to_json());
  rep.witnesses.push_back({{"aggregate",
                            {{"reference", bsd_reference(r.config.n).str()},
                             {"mean_deviation", r.aggregate.mean_deviation.str()},
                             {"max_abs_deviation", r.aggregate.max_abs_deviation.str()},
                             {"max_abs_deviation_approx", r.aggregate.max_abs_deviation.approx()},
                             {"within_band", r.aggregate.within_band},
                             {"within_band_fraction", r.aggregate.within_band_fraction.str()}}}});
  rep.notes = r.warnings;
  if (r.aggregate.within_band != r.samples.size()) {
    rep.refute({{"max_abs_deviation", r.aggregate.max_abs_deviation.str()}, {"band_k", r.config.band_k}});
  }
  return rep;
}

}  // namespace derange
