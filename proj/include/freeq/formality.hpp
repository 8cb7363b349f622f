#ifndef FREEQ_FORMALITY_HPP
#define FREEQ_FORMALITY_HPP

#include <freeq/ring.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace freeq {

/*
 * Truncated commutative DG algebra with W-action, in homological grading:
 * C_n is nonzero only for -cutoff <= n <= 0, the differential has degree -1
 * (d : C_n -> C_{n-1}), and C_0 is spanned by the unit.
 */
class EquivariantDGA {
public:
    EquivariantDGA() = default;
    EquivariantDGA(GroupPtr group, int cutoff);

    const GroupPtr& group() const { return m_group; }
    int cutoff() const { return m_cutoff; }
    bool in_range(int n) const { return n <= 0 && n >= -m_cutoff; }
    // Zero above degree 0; WindowError below -cutoff.
    std::size_t dim(int n) const;
    const std::string& label(int n, std::size_t k) const;
    std::vector<std::string> labels(int n) const;
    std::optional<std::pair<int, std::size_t>> find(const std::string& label) const;

    // d : C_n -> C_{n-1}.
    Matrix differential(int n) const;
    Matrix action(std::size_t g, int n) const;
    Representation rep(int n) const;
    // Columns indexed by i * dim(m) + j for basis pairs (a_i, b_j).
    Matrix product(int n, int m) const;
    Vector multiply(int n, const Vector& a, int m, const Vector& b) const;

    void set_degree(int n, std::vector<std::string> labels);
    void set_differential(int n, Matrix d);
    void set_action(std::size_t g, int n, Matrix a);
    void set_product(int n, int m, Matrix p);
    // Identity action, zero differential and unit products wherever unset.
    void fill_defaults();

    // d^2 = 0, equivariance of d and of the product, graded commutativity,
    // associativity, unit and Leibniz rule, within the cutoff. Throws
    // ValidationError naming the first failure.
    void validate() const;

private:
    void require(int n) const;

    GroupPtr m_group;
    int m_cutoff = 0;
    std::map<int, std::vector<std::string>> m_labels;
    std::map<int, Matrix> m_d;
    std::map<std::pair<std::size_t, int>, Matrix> m_w;
    std::map<std::pair<int, int>, Matrix> m_mul;
};

/*
 * Free graded-commutative algebra on generators of negative degree (even
 * ones polynomial, odd ones exterior), with a differential prescribed on
 * generators and extended by the Leibniz rule, truncated at the cutoff.
 */
struct FreeCdgaSpec {
    GroupPtr group;
    std::vector<std::string> names;
    std::vector<int> degrees;
    // Action on the generator span: column i is w(x_i).
    Representation action;
    // d(x_i) as a linear combination of monomials in the generators;
    // exponents indexed like names.
    std::map<std::size_t, std::map<Exponents, Rational>> differential;
    int cutoff = 0;
};

EquivariantDGA free_cdga(const FreeCdgaSpec& spec);
// Symm(V) with zero differential.
EquivariantDGA symmetric_algebra(const GeneratorSpace& v, GroupPtr group, int cutoff);

Subspace cycles(const EquivariantDGA& c, int n);

struct DgaHomology {
    int n = 0;
    std::size_t dim = 0;
    Matrix cycles;                   // basis of Z_n in C_n coordinates
    QuotientMap quotient;            // Z_n coordinates -> H_n coordinates
    Matrix representatives;          // C_n x dim, cycles lifting the H_n basis
    std::vector<Matrix> action;      // per group element, on H_n
};

DgaHomology homology(const EquivariantDGA& c, int n);

struct FormalityMap {
    RingPtr symm;                    // Symm(V) as a polynomial ring with W-action
    // Image of generator i, a cycle in C_{deg x_i}.
    std::vector<Vector> assignment;
    // Degreewise Symm(V)_n -> C_n for -cutoff <= n <= 0.
    std::map<int, Matrix> matrices;
};

/*
 * Works through the degrees of V in increasing codegree: the composite
 * Z_n -> H_n -> H_n / decomposables is split W-equivariantly and the copy
 * of V_n is sent along the section. Throws ValidationError when V has a
 * degree-0 part or H is not polynomial on V, WindowError when the cutoff
 * is below 2 max|deg V|.
 */
FormalityMap build_formality_map(const EquivariantDGA& c, const GeneratorSpace& v);
// Algebra map induced by an arbitrary generator assignment.
FormalityMap assemble_formality_map(const EquivariantDGA& c, const GeneratorSpace& v,
                                    const std::vector<Vector>& assignment);

struct QuasiIsoDegree {
    int n = 0;
    std::size_t symm_dim = 0;
    std::size_t homology_dim = 0;
    std::size_t rank = 0;
    bool lands_in_cycles = true;
    bool pass = false;
};

struct QuasiIsoReport {
    std::vector<QuasiIsoDegree> degrees;
    bool assignment_in_cycles = true;
    bool assignment_equivariant = true;
    bool pass = false;
};

QuasiIsoReport verify_quasi_iso(const EquivariantDGA& c, const FormalityMap& f, int cutoff);

}  // namespace freeq

#endif
