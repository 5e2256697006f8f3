#include "qpsc/cylinder.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace qpsc;

TEST_CASE("quantum numbers reject non-positive values")
{
    CHECK_THROWS_AS(QuantumNumbers(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(QuantumNumbers(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(QuantumNumbers(1, -2), std::invalid_argument);
    CHECK_NOTHROW(QuantumNumbers(1, 1));
}

TEST_CASE("geometry constants must be positive and finite")
{
    CHECK_THROWS_AS(CylinderGeometry(0.0), std::invalid_argument);
    CHECK_THROWS_AS(CylinderGeometry(1.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(CylinderGeometry(1.0, 1.0, INFINITY), std::invalid_argument);
    CHECK_THROWS_AS(CylinderGeometry(1.0, 1.0, 1.0, NAN), std::invalid_argument);
    const CylinderGeometry g(2.0);
    CHECK(g.length() == 1.0);
    CHECK(g.mass() == 1.0);
    CHECK(g.hbar() == 1.0);
}

TEST_CASE("energy")
{
    const auto deg = CylinderGeometry::degenerate(1.0);

    SUBCASE("ground state at R = L/pi is pi^2")
    {
        CHECK(energy({1, 1}, deg) == doctest::Approx(pi * pi).epsilon(1e-15));
    }
    SUBCASE("(1,2) and (2,1) coincide at 5 pi^2 / 2")
    {
        CHECK(energy({1, 2}, deg) == energy({2, 1}, deg));
        CHECK(energy({1, 2}, deg) == doctest::Approx(2.5 * pi * pi).epsilon(1e-15));
    }
    SUBCASE("R = 1 gives pi^2/2 + 1/2")
    {
        CHECK(energy({1, 1}, CylinderGeometry(1.0)) == doctest::Approx(pi * pi / 2 + 0.5).epsilon(1e-15));
    }
    SUBCASE("mass and hbar scale as hbar^2 / m")
    {
        const CylinderGeometry g(0.7, 1.3, 2.0, 3.0);
        const CylinderGeometry unit(0.7, 1.3);
        CHECK(energy({2, 3}, g) == doctest::Approx(energy({2, 3}, unit) * 9.0 / 2.0).epsilon(1e-14));
    }
}

TEST_CASE("swap symmetry at R = L/pi is exact")
{
    for (double length : {1.0, 0.37, 2.5, 10.0}) {
        const auto g = CylinderGeometry::degenerate(length);
        const CylinderGeometry explicit_radius(length / pi, length);
        for (int a = 1; a <= 15; ++a)
            for (int b = 1; b <= 15; ++b) {
                CHECK(energy({a, b}, g) == energy({b, a}, g));
                CHECK(energy({a, b}, explicit_radius) == energy({b, a}, explicit_radius));
            }
    }
}

TEST_CASE("energy increases strictly in each quantum number")
{
    for (const auto& g : {CylinderGeometry(1.0), CylinderGeometry::degenerate(), CylinderGeometry(0.05, 3.0)}) {
        for (int a = 1; a <= 20; ++a)
            for (int b = 1; b <= 20; ++b) {
                CHECK(energy({a + 1, b}, g) > energy({a, b}, g));
                CHECK(energy({a, b + 1}, g) > energy({a, b}, g));
                CHECK(energy({a, b}, g) > 0.0);
            }
    }
}

TEST_CASE("wavefunction and density")
{
    const auto deg = CylinderGeometry::degenerate(1.0);

    SUBCASE("vanishes on both z boundaries")
    {
        for (int nz = 1; nz <= 5; ++nz) {
            CHECK(std::abs(wavefunction({nz, 2}, deg, 0.3, 0.0)) == 0.0);
            CHECK(std::abs(wavefunction({nz, 2}, deg, 0.3, 1.0)) < 1e-15);
            CHECK(probability_density({nz, 1}, deg, 1.0, 0.0) == 0.0);
        }
    }
    SUBCASE("(1,1) at z = L/2, theta = 0 is 1 when R = L/pi")
    {
        const auto psi = wavefunction({1, 1}, deg, 0.0, 0.5);
        CHECK(psi.real() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(psi.imag() == 0.0);
    }
    SUBCASE("density at the antinode is 1/(pi R L)")
    {
        const CylinderGeometry g(0.8, 2.0);
        CHECK(probability_density({1, 1}, g, 0.0, 1.0) == doctest::Approx(1.0 / (pi * 0.8 * 2.0)).epsilon(1e-15));
    }
    SUBCASE("modulus and density do not depend on theta")
    {
        const CylinderGeometry g(0.6, 1.4);
        for (double theta : {0.0, 0.4, 1.9, 3.3, 6.2}) {
            CHECK(std::abs(wavefunction({3, 4}, g, theta, 0.3)) ==
                  doctest::Approx(std::abs(wavefunction({3, 4}, g, 0.0, 0.3))).epsilon(1e-15));
            CHECK(probability_density({3, 4}, g, theta, 0.3) == probability_density({3, 4}, g, 0.0, 0.3));
        }
    }
    SUBCASE("density equals |psi|^2")
    {
        const CylinderGeometry g(0.6, 1.4);
        CHECK(probability_density({2, 5}, g, 0.7, 0.9) ==
              doctest::Approx(std::norm(wavefunction({2, 5}, g, 0.7, 0.9))).epsilon(1e-14));
    }
    SUBCASE("z outside [0, L] is a domain error")
    {
        CHECK_THROWS_AS(wavefunction({1, 1}, deg, 0.0, -1e-9), DomainError);
        CHECK_THROWS_AS(wavefunction({1, 1}, deg, 0.0, 1.0 + 1e-9), DomainError);
        CHECK_THROWS_AS(probability_density({1, 1}, deg, 0.0, 2.0), DomainError);
    }
}

TEST_CASE("theta marginal of the density is the 1-D infinite-well density")
{
    const CylinderGeometry g(0.45, 1.7);
    constexpr int n = 64;
    for (int nz : {1, 2, 5})
        for (double z : {0.1, 0.5, 1.2}) {
            double marginal = 0.0;
            for (int k = 0; k < n; ++k) marginal += probability_density({nz, 3}, g, 2 * pi * k / n, z) * g.radius();
            marginal *= 2 * pi / n;
            const double s = std::sin(nz * pi * z / g.length());
            CHECK(marginal == doctest::Approx(2.0 / g.length() * s * s).epsilon(1e-13));
        }
}

TEST_CASE("spectrum enumeration")
{
    SUBCASE("1x1 is the ground state")
    {
        const auto levels = spectrum(CylinderGeometry(1.0), 1, 1);
        REQUIRE(levels.size() == 1);
        CHECK(levels[0].qn == QuantumNumbers(1, 1));
    }
    SUBCASE("2x2 at R = L/pi orders (1,1) < (1,2) = (2,1) < (2,2)")
    {
        const auto levels = spectrum(CylinderGeometry::degenerate(), 2, 2);
        REQUIRE(levels.size() == 4);
        CHECK(levels[0].qn == QuantumNumbers(1, 1));
        CHECK(levels[1].qn == QuantumNumbers(1, 2));
        CHECK(levels[2].qn == QuantumNumbers(2, 1));
        CHECK(levels[3].qn == QuantumNumbers(2, 2));
        CHECK(levels[0].energy == doctest::Approx(pi * pi));
        CHECK(levels[1].energy == doctest::Approx(2.5 * pi * pi));
        CHECK(levels[2].energy == levels[1].energy);
        CHECK(levels[3].energy == doctest::Approx(4 * pi * pi));
    }
    SUBCASE("3x3 at R = 1 has nine distinct energies")
    {
        const auto levels = spectrum(CylinderGeometry(1.0), 3, 3);
        REQUIRE(levels.size() == 9);
        for (std::size_t k = 1; k < levels.size(); ++k)
            CHECK(levels[k].energy - levels[k - 1].energy > 1e-6 * levels[k].energy);
    }
    SUBCASE("size and order for a rectangle")
    {
        const auto levels = spectrum(CylinderGeometry(0.3, 1.1), 4, 7);
        CHECK(levels.size() == 28);
        for (std::size_t k = 1; k < levels.size(); ++k) CHECK(levels[k - 1].energy <= levels[k].energy);
    }
    CHECK_THROWS_AS(spectrum(CylinderGeometry(1.0), 0, 2), std::invalid_argument);
}

TEST_CASE("degeneracy groups")
{
    const auto deg = CylinderGeometry::degenerate();

    SUBCASE("3x3 at R = L/pi pairs mirror states, diagonal states stay single")
    {
        const auto groups = degeneracy_groups(spectrum(deg, 3, 3));
        REQUIRE(groups.size() == 6);
        using Q = QuantumNumbers;
        const std::vector<std::vector<Q>> expected{{Q(1, 1)},          {Q(1, 2), Q(2, 1)}, {Q(2, 2)},
                                                   {Q(1, 3), Q(3, 1)}, {Q(2, 3), Q(3, 2)}, {Q(3, 3)}};
        for (std::size_t k = 0; k < groups.size(); ++k) {
            CHECK(groups[k].members == expected[k]);
            CHECK(groups[k].multiplicity() == expected[k].size());
        }
    }
    SUBCASE("single level")
    {
        const auto groups = degeneracy_groups(spectrum(deg, 1, 1));
        REQUIRE(groups.size() == 1);
        CHECK(groups[0].multiplicity() == 1);
    }
    SUBCASE("accidental triple 1 + 49 = 25 + 25 = 49 + 1")
    {
        const auto groups = degeneracy_groups(spectrum(deg, 7, 7));
        const std::vector<QuantumNumbers> triple{{1, 7}, {5, 5}, {7, 1}};
        bool found = false;
        for (const auto& g : groups) found = found || g.members == triple;
        CHECK(found);
    }
    SUBCASE("partition and multiplicity match integer collisions of n_z^2 + n_theta^2")
    {
        constexpr int n = 12;
        const auto levels = spectrum(deg, n, n);
        const auto groups = degeneracy_groups(levels);
        std::set<QuantumNumbers> seen;
        std::size_t total = 0;
        for (const auto& g : groups) {
            total += g.multiplicity();
            const int key = g.members[0].n_z() * g.members[0].n_z() + g.members[0].n_theta() * g.members[0].n_theta();
            int collisions = 0;
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b) collisions += (a * a + b * b == key);
            CHECK(g.multiplicity() == static_cast<std::size_t>(collisions));
            for (const auto& qn : g.members) CHECK(seen.insert(qn).second);
            CHECK(std::is_sorted(g.members.begin(), g.members.end()));
        }
        CHECK(total == levels.size());
        CHECK(seen.size() == levels.size());
    }
    SUBCASE("generic geometry has only singletons")
    {
        for (const auto& g : degeneracy_groups(spectrum(CylinderGeometry(1.0), 6, 6))) CHECK(g.multiplicity() == 1);
    }
    SUBCASE("tolerance must be positive")
    {
        CHECK_THROWS_AS(degeneracy_groups(spectrum(deg, 2, 2), 0.0), std::invalid_argument);
    }
}

TEST_CASE("normalization residual")
{
    const CylinderGeometry unit(1.0);
    CHECK(normalization_residual({1, 1}, unit, 256) <= 1e-10);
    CHECK(normalization_residual({5, 3}, unit, 256) <= 1e-10);
    for (const auto& g : {CylinderGeometry::degenerate(), CylinderGeometry(0.2, 3.0, 2.0, 0.5)})
        for (int nz = 1; nz <= 8; ++nz) CHECK(normalization_residual({nz, nz + 1}, g, 256) <= 1e-10);

    SUBCASE("non-increasing as the node count doubles")
    {
        double previous = normalization_residual({6, 2}, unit, 8);
        for (int nodes = 16; nodes <= 512; nodes *= 2) {
            const double r = normalization_residual({6, 2}, unit, nodes);
            CHECK(r <= previous + 1e-14);
            previous = r;
        }
    }
}
