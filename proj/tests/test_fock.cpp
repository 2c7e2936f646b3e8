#include <doctest.h>

#include <cmath>
#include <complex>

#include "chi2loss/fock.hpp"

using namespace chi2loss;
using cd = std::complex<double>;

TEST_CASE("coherent state: vacuum and Poisson mean") {
  CHECK(coherent_number_expectation(DiscreteModeSystem::coherent({cd{0.0, 0.0}}, 20), 0) == 0.0);
  const auto sys = DiscreteModeSystem::coherent({cd{0.5, 0.0}}, 20);
  CHECK(coherent_number_expectation(sys, 0) == doctest::Approx(0.25).epsilon(1e-10));
  const auto sys1 = DiscreteModeSystem::coherent({std::polar(1.0, 2.2)}, 20);
  CHECK(coherent_number_expectation(sys1, 0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("coherent state: modes factorize") {
  const cd z0{0.5, 0.0};
  for (cd z1 : {cd{0.0, 0.3}, cd{0.9, -0.1}, cd{0.0, 0.0}}) {
    const auto sys = DiscreteModeSystem::coherent({z0, z1}, 16);
    CHECK(coherent_number_expectation(sys, 0) == doctest::Approx(std::norm(z0)).epsilon(1e-9));
    CHECK(coherent_number_expectation(sys, 1) == doctest::Approx(std::norm(z1)).epsilon(1e-9));
  }
}

TEST_CASE("coherent state: truncation loss is detected") {
  CHECK_THROWS_AS(DiscreteModeSystem::coherent({cd{3.0, 0.0}}, 4), TruncationError);
  // |z| <= 1 at cutoff 20 keeps the norm within 1e-8
  const auto sys = DiscreteModeSystem::coherent({cd{1.0, 0.0}}, 20);
  CHECK(sys.norm() >= 1.0 - 1e-8);
}

TEST_CASE("two-photon ket: cross pair expectation is 2|F(i,j)|^2") {
  const auto zero = DiscreteModeSystem::two_photon(2, {cd{}, cd{}, cd{}, cd{}}, 4);
  CHECK(pair_number_expectation(zero, 0, 1) == 0.0);

  const cd c = std::polar(0.3, 0.7);
  const cd f = c / std::sqrt(2.0);
  const auto sys = DiscreteModeSystem::two_photon(2, {cd{}, f, f, cd{}}, 4);
  CHECK(pair_number_expectation(sys, 0, 1) == doctest::Approx(2.0 * std::norm(f)).epsilon(1e-12));
  CHECK(pair_number_expectation(sys, 0, 1) == doctest::Approx(std::norm(c)).epsilon(1e-12));
  CHECK(pair_number_expectation(sys, 1, 0) == doctest::Approx(std::norm(c)).epsilon(1e-12));
}

TEST_CASE("two-photon ket: degenerate mode gives 2|c|^2") {
  const cd c = std::polar(0.4, -0.2);
  const auto sys = DiscreteModeSystem::two_photon(2, {c, cd{}, cd{}, cd{}}, 4);
  CHECK(pair_number_expectation(sys, 0, 0) == doctest::Approx(2.0 * std::norm(c)).epsilon(1e-12));
}

TEST_CASE("two-photon ket on three modes") {
  // F(0,1) and F(1,2) populated; expectations pick out the right pairs
  std::vector<cd> f(9, cd{});
  f[0 * 3 + 1] = f[1 * 3 + 0] = cd{0.2, 0.1};
  f[1 * 3 + 2] = f[2 * 3 + 1] = cd{0.0, -0.3};
  const auto sys = DiscreteModeSystem::two_photon(3, f, 3);
  CHECK(pair_number_expectation(sys, 0, 1) ==
        doctest::Approx(2.0 * std::norm(f[1])).epsilon(1e-12));
  CHECK(pair_number_expectation(sys, 1, 2) ==
        doctest::Approx(2.0 * std::norm(f[5])).epsilon(1e-12));
  CHECK(pair_number_expectation(sys, 0, 2) == doctest::Approx(0.0));
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(DiscreteModeSystem::coherent({cd{}, cd{}, cd{}, cd{}}, 4),
                  InvalidParameterError);
  CHECK_THROWS_AS(DiscreteModeSystem::two_photon(2, {cd{0.0, 0.0}, cd{0.1, 0.0}, cd{0.2, 0.0},
                                                     cd{0.0, 0.0}},
                                                 4),
                  InvalidParameterError);  // not symmetric
  CHECK_THROWS_AS(DiscreteModeSystem::two_photon(2, {cd{}, cd{}}, 4), InvalidParameterError);
}
