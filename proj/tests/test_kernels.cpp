#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "sta/kernels.hpp"

using namespace sta;
namespace k = sta::kernels;

namespace {
std::vector<cplx> random_array(std::mt19937& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(u(gen), u(gen));
  return v;
}
}  // namespace

TEST_CASE("a backend is selected and named") {
  const k::Backend& b = k::backend();
  const std::string name = b.name;
  CHECK((name == "scalar" || name == "avx2"));
  MESSAGE("active kernel backend: ", name);
}

TEST_CASE("dispatched kernels match the scalar reference on awkward lengths") {
  std::mt19937 gen(51);
  // lengths that cover empty input, sub-vector sizes, and vector tails
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 32u, 33u, 64u, 67u, 1024u,
                        1029u}) {
    const auto a = random_array(gen, n);
    const auto b = random_array(gen, n);
    std::vector<double> w(n);
    std::uniform_real_distribution<double> uw(0.0, 1.0);
    for (auto& x : w) x = uw(gen);

    std::vector<cplx> out_ref(n), out_fast(n);
    k::ref::cmul(a.data(), b.data(), out_ref.data(), n);
    k::cmul(a.data(), b.data(), out_fast.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(out_ref[i] - out_fast[i]) < 1e-13);
    }

    std::vector<double> d_ref(n), d_fast(n);
    k::ref::abs2(a.data(), d_ref.data(), n);
    k::abs2(a.data(), d_fast.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(d_ref[i] - d_fast[i]) < 1e-13);
    }

    CHECK(std::abs(k::ref::sum_abs2(a.data(), n) - k::sum_abs2(a.data(), n)) <
          1e-12 * (1.0 + static_cast<double>(n)));
    CHECK(std::abs(k::ref::weighted_sum_abs2(a.data(), w.data(), n) -
                   k::weighted_sum_abs2(a.data(), w.data(), n)) <
          1e-12 * (1.0 + static_cast<double>(n)));
    CHECK(std::abs(k::ref::cdot(a.data(), b.data(), n) - k::cdot(a.data(), b.data(), n)) <
          1e-12 * (1.0 + static_cast<double>(n)));

    auto s_ref = a, s_fast = a;
    k::ref::scale(s_ref.data(), 0.37, n);
    k::scale(s_fast.data(), 0.37, n);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(s_ref[i] - s_fast[i]) < 1e-14);
    }
  }
}

TEST_CASE("scalar kernels compute what they claim") {
  const std::vector<cplx> a{cplx(1.0, 2.0), cplx(-0.5, 0.25)};
  const std::vector<cplx> b{cplx(0.0, 1.0), cplx(2.0, -1.0)};

  std::vector<cplx> out(2);
  k::ref::cmul(a.data(), b.data(), out.data(), 2);
  CHECK(std::abs(out[0] - cplx(-2.0, 1.0)) < 1e-15);
  CHECK(std::abs(out[1] - cplx(-0.75, 1.0)) < 1e-15);

  CHECK(k::ref::sum_abs2(a.data(), 2) == doctest::Approx(5.3125).epsilon(1e-15));

  const std::vector<double> w{2.0, 4.0};
  CHECK(k::ref::weighted_sum_abs2(a.data(), w.data(), 2) ==
        doctest::Approx(2.0 * 5.0 + 4.0 * 0.3125).epsilon(1e-15));

  // <a|b> conjugates the first argument
  const cplx d = k::ref::cdot(a.data(), b.data(), 2);
  const cplx expect = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
  CHECK(std::abs(d - expect) < 1e-15);
}
