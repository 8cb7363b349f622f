#ifndef FREEQ_MODULE_HPP
#define FREEQ_MODULE_HPP

#include <freeq/ring.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace freeq {

/*
 * Reported answers are exact on [t_min, t_max]; computations realize modules
 * on [t_min - margin, t_max + margin].
 */
struct DegreeWindow {
    int t_min = 0;
    int t_max = 0;
    int margin = 0;

    int lo() const { return t_min - margin; }
    int hi() const { return t_max + margin; }
    void validate() const;
};

/*
 * A homogeneous block of generators: a QW-representation placed in one
 * degree. A free R[W]-generator is a block carrying the regular
 * representation; the module it generates is R (x) U with
 *   (p w)(q (x) u) = p w(q) (x) w u.
 * Every projective R[W]-module used here has this shape (QW is semisimple).
 */
struct GeneratorBlock {
    std::string name;
    int degree = 0;
    Representation rep;
    // One label per basis vector of rep; filled by FreeModule when empty.
    std::vector<std::string> labels;
};

GeneratorBlock free_generator(const std::string& name, int degree, GroupPtr group);

// Basis term of a free module: U-basis vector (global index) times monomial.
struct FreeTerm {
    std::size_t u = 0;
    Exponents monomial;

    bool operator<(const FreeTerm& o) const
    {
        if (u != o.u)
            return u < o.u;
        return MonomialOrder{}(monomial, o.monomial);
    }
    bool operator==(const FreeTerm& o) const = default;
};

using FreeElement = std::map<FreeTerm, Rational>;

void add_to(FreeElement& x, const FreeTerm& t, const Rational& c);

/*
 * The module R (x) U for U the direct sum of the generator blocks. Degree t
 * has basis {(u, m) : deg u + deg m = t}, ordered by u and then by
 * MonomialOrder.
 */
class FreeModule {
public:
    FreeModule() = default;
    FreeModule(RingPtr ring, std::vector<GeneratorBlock> blocks);

    const RingPtr& ring() const { return m_ring; }
    const std::vector<GeneratorBlock>& blocks() const { return m_blocks; }
    std::size_t u_count() const { return m_u_block.size(); }
    int u_degree(std::size_t u) const { return m_blocks[m_u_block[u]].degree; }
    std::size_t u_block(std::size_t u) const { return m_u_block[u]; }
    std::size_t u_offset(std::size_t block) const { return m_block_offset[block]; }
    const std::string& u_label(std::size_t u) const { return m_u_label[u]; }
    // Top degree of any generator; INT_MIN when there are none.
    int top_degree() const;
    // Total dimension of U and its W-representation.
    Representation u_rep() const;

    std::size_t dim(int t) const;
    std::size_t index(int t, const FreeTerm& term) const;
    FreeTerm term(int t, std::size_t k) const;
    std::string label(int t, std::size_t k) const;

    Vector coords(int t, const FreeElement& x) const;
    FreeElement element(int t, const Vector& v) const;
    // Degree of a homogeneous element; throws ValidationError otherwise.
    int degree(const FreeElement& x) const;

    FreeElement multiply(const Exponents& m, const FreeElement& x) const;
    FreeElement act(std::size_t w, const FreeElement& x) const;
    // (sum of ring terms) * u, for a ring element with W-twisted action.
    FreeElement ring_times(const RingElement& a, std::size_t u) const;

    Matrix x_matrix(std::size_t i, int t) const;
    Matrix w_matrix(std::size_t g, int t) const;

private:
    RingPtr m_ring;
    std::vector<GeneratorBlock> m_blocks;
    std::vector<std::size_t> m_u_block;
    std::vector<std::size_t> m_block_offset;
    std::vector<std::string> m_u_label;
};

struct Relation {
    FreeElement element;
};

/*
 * Finitely presented graded R[W]-module: R (x) U modulo the R[W]-submodule
 * generated by the relations.
 */
struct Presentation {
    std::string name;
    RingPtr ring;
    std::vector<GeneratorBlock> generators;
    std::vector<Relation> relations;

    FreeModule free_module() const { return FreeModule(ring, generators); }
    // Homogeneity and shape checks; throws ValidationError.
    void validate() const;
    // Lowest degree carrying a generator or relation.
    int bottom_degree() const;
    int top_degree() const;
    // Largest total exponent of a monomial appearing in a relation.
    unsigned relation_length() const;
};

// max|deg x_i| * r * (L + 1), L the longest relation length: room for a
// product of r relations plus one Koszul step per variable.
int default_margin(const Presentation& m);

Presentation suspend(const Presentation& m, int d);
Presentation direct_sum(const Presentation& a, const Presentation& b);
// R[W] (rank one free), QW = R[W]/m R[W], and the trivial module Q.
Presentation free_rank_one(const RingPtr& ring, int degree = 0);
Presentation group_ring_module(const RingPtr& ring, int degree = 0);
Presentation trivial_module(const RingPtr& ring, int degree = 0);

/*
 * Degreewise realization of a graded module on [lo, hi]: bases, action
 * matrices for every polynomial generator and every group element.
 *
 * Outside [lo, hi] the module is unknown unless zero_above / zero_below say
 * it vanishes on that side; dim() throws WindowError for unknown degrees.
 */
class GradedModule {
public:
    GradedModule() = default;
    GradedModule(RingPtr ring, int lo, int hi);

    const RingPtr& ring() const { return m_ring; }
    int lo() const { return m_lo; }
    int hi() const { return m_hi; }
    bool zero_above() const { return m_zero_above; }
    bool zero_below() const { return m_zero_below; }
    void set_zero_above(bool z) { m_zero_above = z; }
    void set_zero_below(bool z) { m_zero_below = z; }

    bool known(int t) const;
    bool in_range(int t) const { return t >= m_lo && t <= m_hi; }
    std::size_t dim(int t) const;
    const std::string& label(int t, std::size_t k) const;

    // Matrix of x_i : M_t -> M_{t + deg x_i}.
    Matrix x_matrix(std::size_t i, int t) const;
    // Matrix of a monomial m : M_t -> M_{t + deg m}.
    Matrix monomial_matrix(const Exponents& m, int t) const;
    Matrix w_matrix(std::size_t g, int t) const;
    Representation rep(int t) const;

    void set_degree(int t, std::size_t dim, std::vector<std::string> labels = {});
    void set_x_matrix(std::size_t i, int t, Matrix m);
    void set_w_matrix(std::size_t g, int t, Matrix m);

    // Checks the module axioms degreewise on [lo, hi]: W acts by a
    // representation, x_i commute, and w x_i = w(x_i) w (the twist).
    void check() const;

    // Nonzero degrees within [lo, hi].
    std::vector<int> support() const;

private:
    RingPtr m_ring;
    int m_lo = 0;
    int m_hi = -1;
    bool m_zero_above = false;
    bool m_zero_below = false;
    std::vector<std::size_t> m_dims;
    std::vector<std::vector<std::string>> m_labels;
    std::vector<std::vector<Matrix>> m_x;  // [i][t - lo]
    std::vector<std::vector<Matrix>> m_w;  // [g][t - lo]
};

// Realization of a presented module. The result is exact in every degree
// >= lo and vanishes above the top generator.
GradedModule realize(const Presentation& m, int lo, int hi);
GradedModule realize(const Presentation& m, const DegreeWindow& window);

// Per-degree data needed by resolution code: quotient maps F_t -> M_t.
struct Realization {
    FreeModule free;
    GradedModule module;
    std::map<int, QuotientMap> quotient;
};
Realization realize_with_quotients(const Presentation& m, int lo, int hi);

GradedModule suspend(const GradedModule& m, int d);
// (M^v)_t = (M_{-t})^*, x acting by transposes and w by rho(w^-1)^T.
GradedModule dual(const GradedModule& m);
// Forget the W-action (restriction to R).
GradedModule restrict_to_polynomial_ring(const GradedModule& m, const RingPtr& polynomial_ring);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);

/*
 * A degree-shifting map source_t -> target_{t + shift}, stored degreewise
 * for the degrees of the source range.
 */
struct ModuleMap {
    int shift = 0;
    std::map<int, Matrix> matrices;

    // Equivariance and R-linearity wherever both sides are known.
    bool check(const GradedModule& source, const GradedModule& target) const;
};

/*
 * Degree-t maps of R[W]-modules M -> N (raising degree by t). Hom over R[W]
 * is computed as the W-invariants of Hom over R, the invariants cut out
 * by the averaging projector, intersected with the relation equations.
 */
struct HomSpace {
    int t = 0;
    // Layout of a map: the images of the U-basis vectors of M's generators,
    // concatenated; image of u lives in N_{deg u + t}.
    std::vector<std::size_t> offsets;
    std::size_t ambient = 0;
    Matrix basis;  // ambient x dim

    std::size_t dim() const { return basis.cols(); }
};

HomSpace hom_graded(const Presentation& m, const GradedModule& n, int t);

// Image of generator-assignment maps under a free module's differential:
// for phi given by images of U_target basis, returns the matrix sending
// phi to (phi o d) as images of U_source basis. Helper shared by Ext.
Matrix precompose_matrix(const FreeModule& source, const std::vector<FreeElement>& images,
                         const FreeModule& target, const GradedModule& n, int t);

// Projector onto Hom_W(U, N)_t inside Hom_Q(U, N)_t, in the layout above.
Matrix hom_averaging_projector(const FreeModule& f, const GradedModule& n, int t);
std::vector<std::size_t> hom_offsets(const FreeModule& f, const GradedModule& n, int t);

struct TorsionResult {
    GradedModule torsion;               // Gamma_m M on [t_min, t_max]
    std::map<int, Matrix> inclusion;    // Gamma_t -> M_t
};

/*
 * x in M_t is declared torsion when m^s x = 0 for the largest s such that
 * every monomial of total exponent s keeps t inside the realized range of
 * M. When M is known to vanish below its range everything is torsion.
 * Throws WindowError when no such s >= 1 exists for some reported degree.
 */
TorsionResult torsion_submodule(const GradedModule& m, int t_min, int t_max);
bool is_torsion(const GradedModule& m, int t_min, int t_max);

}  // namespace freeq

#endif
