#ifndef FREEQ_GROUP_HPP
#define FREEQ_GROUP_HPP

#include <freeq/matrix.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace freeq {

/*
 * A finite group given by its multiplication table. Elements are the
 * indices 0..order()-1; table[a][b] is the index of a*b.
 */
class FiniteGroup {
public:
    std::size_t order() const { return m_names.size(); }
    std::size_t identity() const { return m_identity; }
    std::size_t mul(std::size_t a, std::size_t b) const { return m_table[a][b]; }
    std::size_t inverse(std::size_t a) const { return m_inverse[a]; }
    const std::string& name(std::size_t a) const { return m_names[a]; }
    const std::vector<std::string>& names() const { return m_names; }
    const std::vector<std::vector<std::size_t>>& table() const { return m_table; }
    std::optional<std::size_t> find(const std::string& name) const;

    bool operator==(const FiniteGroup& other) const { return m_names == other.m_names && m_table == other.m_table; }

    friend FiniteGroup group_from_table(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);

private:
    std::vector<std::string> m_names;
    std::vector<std::vector<std::size_t>> m_table;
    std::vector<std::size_t> m_inverse;
    std::size_t m_identity = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// Validates the group axioms exhaustively; the error names the first
// violated axiom.
FiniteGroup group_from_table(std::vector<std::string> names, std::vector<std::vector<std::size_t>> table);

GroupPtr trivial_group();
GroupPtr cyclic_group(std::size_t n);
GroupPtr klein_four_group();
// S_n on {0..n-1}; elements are named by one-line notation, e.g. "021".
GroupPtr symmetric_group(std::size_t n);
// Order-2n symmetries of an n-gon: rotations r^k then reflections s r^k.
GroupPtr dihedral_group(std::size_t n);
// Builtin lookup: "trivial", "Z2", "Zn", "Z2xZ2", "S3", "Dn".
GroupPtr builtin_group(const std::string& name);

/*
 * A representation of a finite group on Q^dim: one matrix per element,
 * indexed like the group.
 */
class Representation {
public:
    Representation() = default;
    Representation(GroupPtr group, std::size_t dim, std::vector<Matrix> matrices);

    const GroupPtr& group() const { return m_group; }
    std::size_t dim() const { return m_dim; }
    const Matrix& operator()(std::size_t g) const { return m_matrices[g]; }
    const std::vector<Matrix>& matrices() const { return m_matrices; }

    // Exhaustive homomorphism check; throws ValidationError.
    void validate() const;

    static Representation trivial(GroupPtr group, std::size_t dim = 1);
    static Representation regular(GroupPtr group);

private:
    GroupPtr m_group;
    std::size_t m_dim = 0;
    std::vector<Matrix> m_matrices;
};

Representation direct_sum(const Representation& a, const Representation& b);
Representation tensor(const Representation& a, const Representation& b);
// Contragredient: g acts by rho(g^-1)^T.
Representation dual(const Representation& a);
// s-th exterior power in the basis of ascending index subsets (lex order);
// matrices are the s x s minors of rho(g).
Representation exterior_power(const Representation& a, std::size_t s);
// Action on a stable subspace, in the coordinates of its basis columns.
// Throws InvariantError if the subspace is not stable.
Representation restrict_to(const Representation& a, const Subspace& stable);
// Action on Q^dim / K for a stable subspace K, in QuotientMap coordinates.
Representation quotient(const Representation& a, const QuotientMap& q);

// e = (1/|W|) sum_w rho(w); an idempotent projecting onto the invariants.
Matrix averaging_idempotent(const Representation& rho);
Subspace invariants(const Representation& rho);

bool is_equivariant(const Matrix& map, const Representation& source, const Representation& target);

/*
 * Equivariant section of an equivariant surjection p : source -> target.
 * Starts from the linear section picking pivot-column preimages and
 * averages it over the group: s = (1/|W|) sum_w rho_S(w) s0 rho_T(w^-1).
 * Throws ValidationError when p is not surjective or not equivariant.
 */
Matrix maschke_split(const Matrix& p, const Representation& source, const Representation& target);

// Basis of Hom_W(source, target), each element a target.dim x source.dim matrix.
std::vector<Matrix> intertwiners(const Representation& source, const Representation& target);
// An invertible intertwiner, if one exists.
std::optional<Matrix> find_isomorphism(const Representation& source, const Representation& target);

}  // namespace freeq

#endif
