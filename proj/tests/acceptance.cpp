// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "entrate/entrate.hpp"
#include "entrate/oracle.hpp"
#include "support.hpp"

using namespace entrate;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  std::vector<std::string> failures;
  std::string note;

  void require(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string str(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

const std::vector<RenyiOrder>& sampled_orders() {
  static const std::vector<RenyiOrder> orders{RenyiOrder::zero(),      RenyiOrder::finite(0.5), RenyiOrder::one(),
                                              RenyiOrder::finite(2),   RenyiOrder::finite(7),   RenyiOrder::infinity()};
  return orders;
}

std::string secs(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f s", t);
  return buf;
}

double rel_err(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

RateBudget budget(std::uint64_t m_max) {
  RateBudget b;
  b.m_max = m_max;
  return b;
}

const GroupedSpectrum kCatalyst = grouped({"0.6", "0.4"});

// 1. incomparable four-level / three-level pair
void incomparable_pair(Criterion& c) {
  const auto t0 = Clock::now();
  auto a = grouped({"0.40", "0.36", "0.14", "0.10"});
  auto b = grouped({"0.50", "0.25", "0.25"});

  auto v = majorizes(a, b);
  c.require(!v.holds, "(a) single copy should be infeasible");
  c.require(v.witness && v.witness->prefix_length == 2 && v.witness->source_prefix_sum == q(19, 25) &&
                v.witness->target_prefix_sum == q(3, 4),
            "(a) witness should be l=2, 19/25 vs 3/4");
  for (std::uint64_t k = 2; k <= 8; ++k)
    c.require(majorizes(tensor_power(a, k), tensor_power(b, k)).holds, "(b) k=" + std::to_string(k) + " infeasible");
  c.require(majorizes(tensor_power(a, 8), tensor_power(b, 9)).holds, "(c) m=8,n=9 infeasible");
  auto a7 = tensor_power(a, 7), b8 = tensor_power(b, 8);
  c.require(!majorizes(a7, b8).holds, "(d) m=7,n=8 feasible");
  c.require(catalyst_verify(a7, b8, kCatalyst, 4), "(e) catalyst (0.6,0.4)x4 does not enable m=7,n=8");
  auto two = RenyiOrder::finite(2);
  double ratio = renyi(a, two) / renyi(b, two);
  c.require(std::abs(ratio - 1.1643) <= 5e-4, "(f) order-2 ratio " + str(ratio));

  double t = seconds_since(t0);
  c.require(t < 10.0, "runtime " + secs(t) + " exceeds 10 s");
  c.note = "S2 ratio " + str(ratio) + ", suite " + secs(t);
}

// 2. rank-5 pair that needs a catalyst
void catalysis_pair(Criterion& c) {
  auto a = grouped({"40/101", "40/101", "10/101", "10/101", "1/101"});
  auto b = grouped({"50/101", "25/101", "20/101", "5/101", "1/101"});
  for (std::uint64_t m = 1; m <= 6; ++m)
    c.require(!majorizes(tensor_power(a, m), tensor_power(b, m)).holds, "plain feasible at m=n=" + std::to_string(m));
  c.require(catalyst_verify(a, b, kCatalyst, 11), "catalyst (0.6,0.4)x11 fails at m=n=1");
  double r = entropy_ratio(a, b).ratio;
  c.require(std::abs(r - 1.0) <= 1e-6, "entropy ratio " + str(r));
  c.note = "R = " + str(r);
}

// 3. (0.4,0.4,0.2) -> (0.5,0.25,0.25)
void near_unit_pair(Criterion& c) {
  auto a = grouped({"0.4", "0.4", "0.2"});
  auto b = grouped({"0.5", "0.25", "0.25"});
  Rational expected = 1;
  for (std::uint64_t k = 1; k <= 10; ++k) {
    expected *= q(4, 5);
    Rational p = max_conversion_probability(tensor_power(a, k), tensor_power(b, k));
    c.require(p == expected, "P_max at k=" + std::to_string(k) + " is " + to_string(p));
  }

  detail::PowerLadder as(a), bs(b);
  for (std::uint64_t m = 2; m <= 100; ++m) {
    std::uint64_t f = detail::scan_down(as[m], bs, default_n_cap(a, b, m));
    c.require(f == m - 1, "f(" + std::to_string(m) + ") = " + std::to_string(f));
  }

  const auto t0 = Clock::now();
  bool holds = majorizes(tensor_power(a, 100), tensor_power(b, 99)).holds;
  double t100 = seconds_since(t0);
  c.require(holds, "m=100 -> n=99 infeasible");
  c.require(t100 < 5.0, "m=100 check took " + secs(t100));

  auto lb = rate_lower_bound(a, b, 100);
  c.require(lb.rate == q(99, 100), "lower bound " + to_string(lb.rate) + " at m_max=100");
  c.note = "m=100 check " + secs(t100) + ", lower bound " + to_string(lb.rate);
}

// 4. uniform-target closed form and its per-m sandwich
void uniform_target_sandwich(Criterion& c) {
  std::mt19937_64 rng(1004);
  for (int i = 0; i < 50; ++i) {
    auto s = gen::random_entangled(rng, 4);
    for (unsigned long k : {2ul, 3ul}) {
      const double cf = closed_form_uniform_target(s, k);
      for (std::uint64_t m = 1; m <= 64; ++m) {
        const double ratio = static_cast<double>(uniform_target_f(s, k, m)) / static_cast<double>(m);
        if (!(cf - 1.0 / static_cast<double>(m) < ratio && ratio <= cf))
          c.require(false, "sample " + std::to_string(i) + " k=" + std::to_string(k) + " m=" + std::to_string(m));
      }
      const double gap = cf - static_cast<double>(uniform_target_f(s, k, 64)) / 64.0;
      c.require(gap <= 1.0 / 64.0, "m=64 gap " + str(gap));
    }
  }
  c.note = "50 sources, k in {2,3}, m = 1..64";
}

// 5. maximally entangled shortcut vs the full check
void max_entangled_shortcut(Criterion& c) {
  std::mt19937_64 rng(1005);
  for (int i = 0; i < 200; ++i) {
    auto s = gen::random_entangled(rng, 6);
    for (std::uint64_t k = 2; k <= 6; ++k)
      c.require(max_entangled_reachable(s, k) == nielsen_transformable(s, GroupedSpectrum::uniform(from_u64(k))).holds,
                "sample " + std::to_string(i) + " k=" + std::to_string(k));
  }
  c.note = "200 spectra, k = 2..6";
}

// 6. grouped algorithms vs brute force
void oracle_equivalence(Criterion& c) {
  std::mt19937_64 rng(1006);
  int holds = 0;
  for (int i = 0; i < 1000; ++i) {
    auto sa = gen::random_spectrum(rng, 2, 4), sb = gen::random_spectrum(rng, 2, 4);
    std::uint64_t ma = 1 + rng() % 6, mb = 1 + rng() % 6;
    while (std::pow(double(sa.dimension()), double(ma)) > 5000) --ma;
    while (std::pow(double(sb.dimension()), double(mb)) > 5000) --mb;
    auto ga = tensor_power(to_grouped(sa), ma), gb = tensor_power(to_grouped(sb), mb);
    auto na = oracle::naive_tensor_power(oracle::dense(sa), ma), nb = oracle::naive_tensor_power(oracle::dense(sb), mb);
    c.require(oracle::dense(ga) == na && oracle::dense(gb) == nb, "tensor power mismatch at " + std::to_string(i));
    bool grouped_verdict = majorizes(ga, gb).holds;
    c.require(grouped_verdict == oracle::naive_majorizes(na, nb), "majorization mismatch at " + std::to_string(i));
    holds += grouped_verdict;
  }
  c.note = "1000 instances, " + std::to_string(holds) + " feasible";
}

// 7. entropy properties
void entropy_properties(Criterion& c) {
  std::mt19937_64 rng(1007);
  for (int i = 0; i < 100; ++i) {
    auto a = gen::random_entangled(rng), b = gen::random_entangled(rng);
    auto ab = tensor_product(a, b);
    for (const auto& o : sampled_orders())
      c.require(rel_err(renyi(ab, o), renyi(a, o) + renyi(b, o)) <= 1e-9, "additivity, pair " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i) {
    auto b = gen::random_spectrum(rng, 2, 5);
    auto a = gen::random_majorized_by(rng, b);
    auto bg = to_grouped(b);
    c.require(majorizes(a, bg).holds, "constructed pair " + std::to_string(i) + " not majorized");
    for (const auto& o : sampled_orders())
      c.require(renyi(a, o) >= renyi(bg, o) - 1e-12, "Schur concavity, pair " + std::to_string(i));
  }
  for (int i = 0; i < 50; ++i) {
    auto a = gen::random_entangled(rng), b = gen::random_entangled(rng), d = gen::random_entangled(rng);
    std::uint64_t p = 1 + rng() % 3, r = 1 + rng() % 3;
    double rab = entropy_ratio(a, b).ratio;
    double scaled = entropy_ratio(tensor_power(a, p), tensor_power(b, r)).ratio;
    c.require(std::abs(scaled - double(p) / double(r) * rab) <= 1e-9 * std::max(1.0, scaled),
              "power scaling, triple " + std::to_string(i));
    c.require(rab * entropy_ratio(b, d).ratio <= entropy_ratio(a, d).ratio + 1e-9, "chain rule, triple " + std::to_string(i));
    c.require(entropy_ratio(tensor_product(a, b), d).ratio >= entropy_ratio(a, d).ratio + entropy_ratio(b, d).ratio - 1e-9,
              "source superadditivity, triple " + std::to_string(i));
  }
  c.note = "100 additive pairs, 100 majorizing pairs, 50 ratio triples";
}

// 8. two-level closed cases
void two_level_cases(Criterion& c) {
  auto a = grouped({"0.6", "0.4"}), b = grouped({"0.75", "0.25"});
  c.require(majorizes(a, b).holds, "p <= q single copy infeasible");
  auto r = rate_report(a, b, budget(8));
  c.require(r.lower_bound == 1 && std::abs(r.upper_bound - 1.0) <= 1e-9,
            "p <= q bracket [" + to_string(r.lower_bound) + ", " + str(r.upper_bound) + "]");

  auto s = grouped({"0.9", "0.1"}), t = grouped({"0.81", "0.19"});
  auto s2 = tensor_power(s, 2);
  c.require(s2 == grouped({"0.81", "0.09", "0.09", "0.01"}), "square of (0.9, 0.1)");
  c.require(majorizes(s2, t).holds, "(0.81,0.09,0.09,0.01) does not reach (0.81,0.19)");
  auto inf = RenyiOrder::infinity();
  double upper_inf = renyi(s, inf) / renyi(t, inf);
  c.require(std::abs(upper_inf - 0.5) <= 1e-12, "order-inf ratio " + str(upper_inf));
  auto rr = rate_report(s, t, budget(8));
  c.require(rr.lower_bound == q(1, 2) && rr.lower_m == 2, "lower bound " + to_string(rr.lower_bound));
  c.require(std::abs(rr.upper_bound - 0.5) <= 1e-9, "upper bound " + str(rr.upper_bound));
  c.note = "D = 1 and D = 1/2 pinned";
}

// 9. lower <= upper on random pairs
void sandwich(Criterion& c) {
  std::mt19937_64 rng(1009);
  int pairs = 0;
  for (int i = 0; i < 100; ++i) {
    auto a = gen::random_entangled(rng, 4), b = gen::random_entangled(rng, 4);
    try {
      RateReport r = rate_report(a, b, budget(6));
      c.require(r.lower_bound.get_d() <= r.upper_bound + kSandwichSlack,
                "pair " + std::to_string(i) + ": " + to_string(r.lower_bound) + " > " + str(r.upper_bound));
      ++pairs;
    } catch (const std::logic_error& e) {
      c.require(false, "pair " + std::to_string(i) + ": " + e.what());
    }
  }
  c.note = std::to_string(pairs) + " random pairs";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Criterion&)>>> criteria{
      {"incomparable pair golden suite", incomparable_pair},
      {"catalysis pair golden suite", catalysis_pair},
      {"near-unit-rate pair golden suite", near_unit_pair},
      {"uniform-target closed form sandwich", uniform_target_sandwich},
      {"maximally entangled shortcut equivalence", max_entangled_shortcut},
      {"oracle equivalence", oracle_equivalence},
      {"entropy properties", entropy_properties},
      {"two-level closed cases", two_level_cases},
      {"rate sandwich invariant", sandwich},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    const bool ok = c.failures.empty();
    failed += !ok;
    std::printf("%s criterion %zu: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), t,
                c.note.empty() ? "" : " - ", c.note.c_str());
    for (std::size_t k = 0; k < c.failures.size() && k < 10; ++k) std::printf("     %s\n", c.failures[k].c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
