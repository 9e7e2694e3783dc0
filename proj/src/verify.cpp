#include "strahler/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include <spdlog/spdlog.h>

#include "strahler/registers.hpp"
#include "strahler/series.hpp"
#include "strahler/trees.hpp"

namespace strahler::verify {

namespace {

using registers::TruncSeries;
using series::Var;

// Thrown inside a check to report the first mismatch.
struct Mismatch {
  std::string what;
};

template <typename... Args>
[[noreturn]] void fail(Args&&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  throw Mismatch{os.str()};
}

void expect_equal_series(const TruncSeries& a, const TruncSeries& b, const std::string& label) {
  const std::size_t order = std::min(a.order(), b.order());
  for (std::size_t n = 0; n <= order; ++n) {
    if (a[n] != b[n]) {
      fail(label, ": coefficient ", n, " differs (", a[n].get_str(), " vs ", b[n].get_str(), ")");
    }
  }
}

class Runner {
 public:
  explicit Runner(Report& report) : report_(report) {}

  void check(const std::string& name, const std::function<void()>& body) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult result{name, true, "ok"};
    try {
      body();
    } catch (const Mismatch& m) {
      result.passed = false;
      result.detail = m.what;
    } catch (const std::exception& e) {
      result.passed = false;
      result.detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    spdlog::debug("check {} {} ({} ms)", name, result.passed ? "passed" : "FAILED", ms);
    if (!result.passed) spdlog::info("check {} failed: {}", name, result.detail);
    report_.checks.push_back(std::move(result));
  }

 private:
  Report& report_;
};

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* Report::first_failure() const {
  auto it = std::find_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; });
  return it == checks.end() ? nullptr : &*it;
}

Report run(const Options& options) {
  Report report;
  Runner runner(report);
  const std::size_t m = options.oracle_max_size;
  const std::size_t order = std::max(options.order, m);
  const unsigned top = registers::max_reg(order);

  spdlog::info("verify: oracle to size {}, identities to order {}", m, order);

  const auto reg_counts = trees::reg_table(m);
  const auto butterfly_counts = trees::butterfly_table(m);
  const series::USubstitution subst(order);
  const auto b = registers::catalan_B(order).series;
  const auto a = registers::butterfly_A(order).series;
  const auto r_rec = registers::R_rec_all(top + 1, order);
  const auto s_rec = registers::S_rec_all(top + 1, order);
  const auto t_rec = registers::T_rec_all(top + 1, order);
  std::vector<TruncSeries> r_closed, s_closed, t_closed;
  for (unsigned p = 0; p <= top + 1; ++p) {
    r_closed.push_back(registers::R_closed(p, subst).series);
    s_closed.push_back(registers::S_closed(p, subst).series);
    t_closed.push_back(registers::T_closed(p, subst).series);
  }

  runner.check("catalan-count-vs-enumeration", [&] {
    for (std::size_t n = 0; n <= m; ++n) {
      const auto count = trees::enumerate(n, m).size();
      if (Rational(static_cast<unsigned long>(count)) != b[n]) {
        fail("[z^", n, "]B = ", b[n].get_str(), " but enumeration found ", count, " trees");
      }
    }
  });

  runner.check("reg-counts-vs-R_p", [&] {
    for (std::size_t n = 0; n <= m; ++n) {
      for (unsigned p = 0; p <= top + 1; ++p) {
        const auto it = reg_counts[n].find(p);
        const unsigned long oracle = it == reg_counts[n].end() ? 0 : it->second;
        if (r_closed[p][n] != oracle || r_rec[p][n] != oracle) {
          fail("[z^", n, "]R_", p, ": closed form ", r_closed[p][n].get_str(), ", recursion ",
               r_rec[p][n].get_str(), ", oracle ", oracle);
        }
      }
    }
  });

  runner.check("glue-split-roundtrip", [&] {
    const std::size_t limit = std::min<std::size_t>(m, 8);
    std::vector<std::vector<trees::BinaryTree>> by_size;
    for (std::size_t n = 0; n <= limit; ++n) by_size.push_back(trees::enumerate(n));
    for (std::size_t n = 1; n <= limit; ++n) {
      std::size_t pairs = 0;
      for (std::size_t k = 1; k <= n; ++k) {
        for (const auto& t1 : by_size[k]) {
          for (const auto& t2 : by_size[n - k]) {
            const auto glued = trees::glue(t1, t2);
            const auto [s1, s2] = trees::split(glued);
            if (!(s1 == t1 && s2 == t2) || glued.size() != n) {
              fail("split(glue(", t1.to_string(), ", ", t2.to_string(), ")) is not the identity");
            }
            ++pairs;
          }
        }
      }
      const auto butterflies = trees::enumerate_butterflies(n, limit);
      for (const auto& bt : butterflies) {
        const auto [t1, t2] = trees::split(bt);
        if (!(trees::glue(t1, t2) == bt)) fail("glue(split(b)) differs for ", bt.tree().to_string());
      }
      if (pairs != butterflies.size() || a[n] != static_cast<unsigned long>(pairs)) {
        fail("size ", n, ": ", pairs, " pairs, ", butterflies.size(), " butterflies, [z^n]A = ",
             a[n].get_str());
      }
    }
  });

  runner.check("butterfly-counts-vs-A", [&] {
    for (std::size_t n = 1; n <= m; ++n) {
      std::uint64_t total = 0;
      for (const auto& [p, c] : butterfly_counts[n]) total += c;
      if (a[n] != static_cast<unsigned long>(total) || registers::butterfly_count(n) != total) {
        fail("size ", n, ": enumeration ", total, ", [z^n]A ", a[n].get_str());
      }
    }
  });

  runner.check("T-closed-vs-oracle", [&] {
    for (unsigned p = 0; p <= top + 1; ++p) {
      TruncSeries t = t_closed[p];
      if (options.inject_fault && p == 2 && t.order() >= 4) t = t.with_coefficient(4, t[4] + 1);
      for (std::size_t n = 1; n <= m; ++n) {
        std::uint64_t oracle = 0;
        for (const auto& [q, c] : butterfly_counts[n]) {
          if (q >= p) oracle += c;
        }
        if (t[n] != static_cast<unsigned long>(oracle)) {
          fail("[z^", n, "]T_", p, ": closed form ", t[n].get_str(), ", brute force ", oracle);
        }
      }
    }
  });

  runner.check("distribution-vs-oracle", [&] {
    for (std::size_t n = 1; n <= m; ++n) {
      const auto dist = registers::distribution(n);
      std::map<unsigned, Integer> oracle;
      for (const auto& [p, c] : butterfly_counts[n]) oracle[p] = Integer(static_cast<unsigned long>(c));
      if (dist != oracle) fail("distribution(", n, ") differs from the enumeration");
    }
  });

  runner.check("A-coefficient-formula", [&] {
    const auto big_a = registers::butterfly_A(options.formula_max).series;
    for (std::size_t n = 1; n <= options.formula_max; ++n) {
      if (big_a[n] != registers::butterfly_count(n)) {
        fail("[z^", n, "]A = ", big_a[n].get_str(), " but 3(2n)!/((n-1)!(n+2)!) = ",
             registers::butterfly_count(n).get_str());
      }
    }
  });

  runner.check("R-rec-vs-closed", [&] {
    for (unsigned p = 0; p <= top + 1; ++p) expect_equal_series(r_rec[p], r_closed[p], "R_" + std::to_string(p));
  });
  runner.check("S-rec-vs-closed", [&] {
    for (unsigned p = 0; p <= top + 1; ++p) expect_equal_series(s_rec[p], s_closed[p], "S_" + std::to_string(p));
  });
  runner.check("T-rec-vs-closed", [&] {
    for (unsigned p = 0; p <= top + 1; ++p) expect_equal_series(t_rec[p], t_closed[p], "T_" + std::to_string(p));
  });

  runner.check("partition-identities", [&] {
    TruncSeries sum(Var::Z, order);
    for (unsigned p = 0; p <= top + 1; ++p) sum += r_closed[p];
    expect_equal_series(sum, b, "sum_p R_p = B");
    for (unsigned p = 0; p <= top; ++p) {
      expect_equal_series(s_rec[p] - s_rec[p + 1], r_rec[p],
                          "S_" + std::to_string(p) + " - S_" + std::to_string(p + 1) + " = R_" +
                              std::to_string(p));
    }
  });

  runner.check("monotonicity", [&] {
    for (unsigned p = 0; p + 1 <= top + 1; ++p) {
      const auto dt = t_rec[p] - t_rec[p + 1];
      const auto ds = s_rec[p] - s_rec[p + 1];
      for (std::size_t n = 0; n <= order; ++n) {
        if (sgn(dt[n]) < 0 || sgn(ds[n]) < 0) fail("negative count at p = ", p, ", n = ", n);
      }
    }
  });

  runner.check("identity-one-minus-z(B-S_p)", [&] {
    const auto z = TruncSeries::monomial(Var::Z, order, 1);
    const auto one = TruncSeries::constant(Var::Z, order, 1);
    for (unsigned p = 0; p <= top; ++p) {
      const std::uint64_t q = std::uint64_t{1} << p;
      const auto lhs = one - z * (b - s_rec[p]);
      const series::URational factor{
          series::SparsePoly({{0, 1}, {1, 1}}) * series::SparsePoly::one_minus(q),
          series::SparsePoly::constant(1)};
      const series::URational target{series::SparsePoly::one_minus(q + 1), series::SparsePoly::constant(1)};
      expect_equal_series(lhs * subst.apply(series::expand(factor, order)),
                          subst.apply(series::expand(target, order)),
                          "(1 - z(B - S_" + std::to_string(p) + "))(1+u)(1-u^2^p) = 1 - u^(2^p+1)");
    }
  });

  runner.check("identity-one-plus-zA", [&] {
    const auto z = TruncSeries::monomial(Var::Z, order, 1);
    const auto one = TruncSeries::constant(Var::Z, order, 1);
    const auto one_plus_u = subst.apply(TruncSeries::from_integers(Var::U, order, {1, 1}));
    const auto target = subst.apply(TruncSeries::from_integers(Var::U, order, {1, 1, 1}));
    expect_equal_series((one + z * a) * one_plus_u, target, "(1 + zA)(1+u) = 1+u+u^2");
  });

  runner.check("closed-form-u-routes", [&] {
    for (unsigned p = 1; p <= top + 1; ++p) {
      const auto sparse = series::expand(registers::T_closed_u(p), order);
      const auto factored =
          TruncSeries::from_integers(Var::U, order, registers::T_closed_u_series(p, order));
      expect_equal_series(sparse, factored, "T_" + std::to_string(p) + " in u");
      expect_equal_series(series::expand(registers::S_closed_u(p), order),
                          TruncSeries::from_integers(Var::U, order, registers::S_closed_u_series(p, order)),
                          "S_" + std::to_string(p) + " in u");
    }
  });

  runner.check("lagrange-vs-compose", [&] {
    const auto u = series::solve_u(order);
    for (unsigned p = 1; p <= top; ++p) {
      const auto f = series::expand(registers::T_closed_u(p), order);
      const auto composed = series::compose(f, u);
      const auto fprime = f.derivative();
      for (std::size_t n = 1; n <= order; ++n) {
        if (series::lagrange_coeff(fprime, n) != composed[n]) {
          fail("T_", p, ": [z^", n, "] by Lagrange inversion differs from composition");
        }
      }
    }
  });

  runner.check("fast-vs-exact-average", [&] {
    const std::size_t n_max = std::min<std::size_t>(order, 200);
    for (auto family : {registers::Family::Butterfly, registers::Family::Classical}) {
      const auto slow = registers::exact_averages(n_max, family);
      const registers::AverageTable fast(family, n_max);
      for (std::size_t n = 1; n <= n_max; ++n) {
        if (fast.average(n) != slow[n - 1]) fail("average at n = ", n, " differs between the two paths");
      }
    }
  });

  {
    const auto raw = series::expand(registers::T_closed_u(0), order);
    const auto a_u = TruncSeries::from_integers(Var::U, order, {0, 1, 1});
    std::ostringstream note;
    note << "T_p closed form at p = 0 expands to " << (raw == a_u ? "A" : raw.truncated(3).to_string())
         << "; A = u + u^2. The closed form is used for p >= 1 and T_0 := A.";
    report.notes.push_back(note.str());
  }
  return report;
}

}  // namespace strahler::verify
