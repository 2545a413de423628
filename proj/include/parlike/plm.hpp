#ifndef PARLIKE_PLM_HPP
#define PARLIKE_PLM_HPP

// Parabolic-like quadruples (f, U', U, gamma): assembly by splitting the
// domains along the dividing arc, clause-by-clause validation, filled Julia
// membership, and the identities tying h2 to the family z + 1/z + A.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "parlike/arc.hpp"
#include "parlike/regions.hpp"

namespace parlike {

enum class ClauseStatus { Pass, Fail, Unverifiable };

struct ClauseResult {
    ClauseStatus status = ClauseStatus::Unverifiable;
    std::string detail;
};

enum class Clause {
    DomainShape,
    ProperDegree,
    ParabolicMultiplier,
    ArcInvariance,
    ArcEndpoints,
    OmegaCompactness,
    DeltaIsomorphism,
    AttractingPetalInDelta,
};
inline constexpr int kClauseCount = 8;
const char* clause_name(Clause c);

struct ValidationReport {
    std::array<ClauseResult, kClauseCount> clauses;

    ClauseResult& operator[](Clause c) { return clauses[int(c)]; }
    const ClauseResult& operator[](Clause c) const { return clauses[int(c)]; }
    bool any_fail() const;
    std::vector<Clause> failed() const;
    // One aligned line per clause.
    std::string to_text() const;
};

struct PLMap {
    MapSpec map = MapSpec::h_two();
    Region U_prime;
    Region U;
    DividingArc gamma;
    int degree_d = 0;
    Complex parabolic_point;
    // Omega / Omega' hold the filled Julia set, Delta / Delta' the external
    // attracting side.
    Region omega, omega_prime, delta, delta_prime;
    RegionLocator omega_prime_locator;
};

struct Assembly {
    std::optional<PLMap> plm;  // present iff no clause failed
    ValidationReport report;
    PLMap draft;  // the split pieces even when a clause failed
};

// Validation knobs; the defaults are the stated thresholds.
struct AssembleOptions {
    double invariance_tol = 1e-5;
    double multiplier_tol = 1e-8;
    int degree_samples = 8;
    int injectivity_pairs = 1000;
    unsigned seed = 12345;
};

// Throws std::invalid_argument on structural failure (open or degenerate
// boundary, arc without base sample or not reaching near the boundary of U).
Assembly assemble(const MapSpec& map, const Region& U_prime, const Region& U, const DividingArc& gamma,
                  const AssembleOptions& opts = {});

// Splits a positively oriented region along a path whose ends lie on (or
// near) its boundary. Returns {left, right} of the path.
std::pair<Region, Region> split_region(const Region& region, const std::vector<Complex>& path);

// Inserts z into the boundary polygon at its nearest segment (no-op when z
// already is a vertex).
Region insert_boundary_point(const Region& region, Complex z);

struct JuliaMembership {
    enum Kind { Inside, Escaped, Undecided } kind = Undecided;
    int step = 0;  // escape step for Escaped, last step otherwise
};

JuliaMembership in_filled_julia(const PLMap& plm, Complex z, int max_iter);

// max |phi(h2(z)) - P0(phi(z))| / (1 + |P0(phi(z))|) over n uniform samples
// of |z| < 3 away from the poles, phi(z) = (z+1)/(z-1).
double h2_p0_conjugacy_residual(int n_samples, unsigned seed);

struct ExpansionProfile {
    double min_modulus = 0.0;
    std::vector<double> argmin_angles;  // within 1e-6 of the minimum, radians in [0, 2pi)
};
ExpansionProfile circle_expansion_profile(int n_samples);

// |h2'(z)| = 16 |z| / |3 + z^2|^2.
double h2_derivative_modulus(Complex z);

}  // namespace parlike

#endif  // PARLIKE_PLM_HPP
