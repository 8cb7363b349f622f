#ifndef FREEQ_RESOLUTION_HPP
#define FREEQ_RESOLUTION_HPP

#include <freeq/module.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freeq {

/*
 * A finite complex of projective R[W]-modules F_s = R (x) U_s, stored
 * symbolically: the differential is given by the images of the U_s basis in
 * F_{s-1}. When `augmented` is set, F_0 maps to the presented module through
 * `augmentation` (images of the U_0 basis in the presentation's free module).
 */
struct ProjectiveComplex {
    RingPtr ring;
    std::vector<FreeModule> terms;
    std::vector<std::vector<FreeElement>> differentials;  // [s], s >= 1; [0] is empty
    std::optional<Presentation> augmented;
    std::vector<FreeElement> augmentation;
    // Lowest degree in which generators were searched for; answers that
    // depend on degrees below this are not covered.
    int lo = 0;

    std::size_t length() const { return terms.empty() ? 0 : terms.size() - 1; }
    // Rank over R[W]: dim U_s / |W|, which is an integer for free terms.
    Rational rank(std::size_t s) const;
    // True iff U_s is a free QW-module (character check).
    bool is_free(std::size_t s) const;
    std::vector<int> generator_degrees(std::size_t s) const;
};

/*
 * Degreewise chain complex C_0 <- C_1 <- ... <- C_n on a common degree
 * range. maps[k] : C_{k+1} -> C_k, one matrix per degree. Position k of
 * modules[] carries homological index first_index + k.
 */
struct RealizedComplex {
    int first_index = 0;
    std::vector<GradedModule> modules;
    std::vector<std::map<int, Matrix>> maps;
    int lo = 0;
    int hi = 0;
};

RealizedComplex realize(const ProjectiveComplex& c, int lo, int hi, bool include_augmentation = true);

struct ExactnessReport {
    bool exact = true;
    // homology[(index, t)] for every position and degree in range; only
    // nonzero entries are stored.
    std::map<std::pair<int, int>, std::size_t> homology;
    int lo = 0;
    int hi = 0;
};

// Throws InvariantError naming the offending (position, degree) when two
// consecutive maps do not compose to zero.
void check_d_squared(const RealizedComplex& c);
ExactnessReport verify_exactness(const RealizedComplex& c);
// W-equivariance and R-linearity of every map.
bool check_equivariance(const RealizedComplex& c);

/*
 * Koszul resolution of QW: F_s = R (x) (Lambda^s V (x) QW), generator
 * x^A (x) g in degree sum_{i in A} deg x_i, differential
 *   d(x_{i_1} ^ ... ^ x_{i_s}) = sum_k (-1)^(k+1) x_{i_k} (x_{i_1} ^ .. ^ x_{i_k}-hat ^ .. ^ x_{i_s}),
 * W acting diagonally, Lambda^s V through the exterior power of the action.
 */
ProjectiveComplex koszul_complex(const RingPtr& ring);

/*
 * Minimal projective resolution. Degree by degree from the top, minimal
 * generators of each syzygy module are lifted from K_t / (m K)_t by an
 * equivariant section. Generators are searched on [lo, top]; a generator
 * found in the guard band [lo, lo + max|deg x_i|) raises WindowError since
 * its own syzygies may fall below the range.
 */
ProjectiveComplex minimal_free_resolution(const Presentation& m, int lo);
ProjectiveComplex minimal_free_resolution(const Presentation& m, const DegreeWindow& window);

// No differential component has a unit (monomial 1) term.
bool is_minimal(const ProjectiveComplex& c);

// E_s = (C_s)^v with transposed differentials, reindexed so the result is
// again a chain complex: E_j = C_{n-j}^v.
RealizedComplex dual_complex(const RealizedComplex& c);
RealizedComplex dual_injective_complex(const ProjectiveComplex& k, int lo, int hi);

}  // namespace freeq

#endif
