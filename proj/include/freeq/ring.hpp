#ifndef FREEQ_RING_HPP
#define FREEQ_RING_HPP

#include <freeq/group.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace freeq {

/*
 * Degrees follow the homological convention: polynomial generators sit in
 * even negative degrees, so R = Q[x_1..x_r] lives in degrees <= 0 and
 * multiplication by x_i lowers degree by |deg x_i|.
 */

using Exponents = std::vector<unsigned>;

// Monomial order: lexicographic on exponent vectors, largest first
// (x1^2 > x1 x2 > x2^2).
struct MonomialOrder {
    bool operator()(const Exponents& a, const Exponents& b) const { return a > b; }
};

class Polynomial {
public:
    using Terms = std::map<Exponents, Rational, MonomialOrder>;

    Polynomial() = default;
    explicit Polynomial(std::size_t nvars) : m_nvars(nvars) {}
    static Polynomial monomial(const Exponents& e, Rational coeff = 1);
    static Polynomial constant(std::size_t nvars, Rational c);

    std::size_t nvars() const { return m_nvars; }
    const Terms& terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }

    void add_term(const Exponents& e, const Rational& c);
    Polynomial operator+(const Polynomial& rhs) const;
    Polynomial operator*(const Polynomial& rhs) const;
    Polynomial operator*(const Rational& s) const;
    bool operator==(const Polynomial& rhs) const { return m_nvars == rhs.m_nvars && m_terms == rhs.m_terms; }

private:
    std::size_t m_nvars = 0;
    Terms m_terms;
};

/*
 * Polynomial generators with degrees and the W-action on their span.
 * action(w) column j holds the coordinates of w(x_j).
 */
struct GeneratorSpace {
    std::vector<std::string> names;
    std::vector<int> degrees;
    Representation action;

    std::size_t size() const { return degrees.size(); }
};

// One term (monomial * group element) of R[W].
struct RingTerm {
    Exponents monomial;
    std::size_t group_element = 0;

    bool operator<(const RingTerm& o) const
    {
        if (monomial != o.monomial)
            return MonomialOrder{}(monomial, o.monomial);
        return group_element < o.group_element;
    }
    bool operator==(const RingTerm& o) const = default;
};

class TwistedGroupRing;
using RingPtr = std::shared_ptr<const TwistedGroupRing>;

class RingElement {
public:
    RingElement() = default;
    explicit RingElement(RingPtr ring) : m_ring(std::move(ring)) {}

    const RingPtr& ring() const { return m_ring; }
    const std::map<RingTerm, Rational>& terms() const { return m_terms; }
    bool is_zero() const { return m_terms.empty(); }
    void add_term(const RingTerm& t, const Rational& c);
    // Degree of a homogeneous nonzero element; throws ValidationError if the
    // element is not homogeneous or is zero.
    int degree() const;
    bool is_homogeneous() const;

    RingElement operator+(const RingElement& rhs) const;
    bool operator==(const RingElement& rhs) const { return m_terms == rhs.m_terms; }
    std::string to_string() const;

private:
    RingPtr m_ring;
    std::map<RingTerm, Rational> m_terms;
};

/*
 * The twisted group ring R[W], R = Q[x_1..x_r], with
 *   (p w)(q v) = (p * w(q)) (w v).
 * Degreewise data (monomial lists, action matrices) is cached on demand; the
 * caches are guarded so a shared ring can be used from several threads.
 */
class TwistedGroupRing : public std::enable_shared_from_this<TwistedGroupRing> {
public:
    const GeneratorSpace& generators() const { return m_gens; }
    const GroupPtr& group() const { return m_group; }
    std::size_t rank() const { return m_gens.size(); }
    int degree(std::size_t i) const { return m_gens.degrees[i]; }
    int degree(const Exponents& e) const;
    // max |deg x_i|; 2 for the empty generator set.
    int max_abs_degree() const;
    int min_abs_degree() const;

    // Monomials of degree t in MonomialOrder; empty for t > 0 or odd t.
    const std::vector<Exponents>& monomials(int t) const;
    std::size_t monomial_index(int t, const Exponents& e) const;
    std::size_t dim(int t) const { return monomials(t).size(); }

    Polynomial act(std::size_t w, const Polynomial& p) const;
    // Matrix of w acting on R_t in the monomial basis.
    const Matrix& action_matrix(std::size_t w, int t) const;

    // Canonical basis of (R[W])_t: monomials (outer) times group elements.
    std::vector<RingTerm> graded_piece(int t) const;

    RingElement one() const;
    RingElement generator(std::size_t i) const;
    RingElement group_element(std::size_t w) const;
    RingElement multiply(const RingElement& a, const RingElement& b) const;

    // Degreewise monomial bases of the augmentation ideal m of R, for
    // t in [t_min, t_max].
    std::map<int, std::vector<Exponents>> augmentation_ideal_basis(int t_min, int t_max) const;

    std::string monomial_string(const Exponents& e) const;

    friend RingPtr build_ring(GeneratorSpace gens, GroupPtr group);

private:
    TwistedGroupRing() = default;

    GeneratorSpace m_gens;
    GroupPtr m_group;

    mutable std::mutex m_mutex;
    mutable std::map<int, std::vector<Exponents>> m_monomials;
    mutable std::map<int, std::map<Exponents, std::size_t>> m_monomial_index;
    mutable std::map<std::pair<std::size_t, int>, Matrix> m_action;
};

/*
 * Validates: degrees even and negative, action a representation of W on
 * Q^r, action block-diagonal by degree. Throws ValidationError.
 */
RingPtr build_ring(GeneratorSpace gens, GroupPtr group);

// Same generators with W replaced by the trivial group.
RingPtr underlying_polynomial_ring(const TwistedGroupRing& ring);

bool same_ring(const TwistedGroupRing& a, const TwistedGroupRing& b);

// Exponent vectors with sum_i e_i deg_i = t, largest first in MonomialOrder.
std::vector<Exponents> enumerate_monomials(const std::vector<int>& degrees, int t);

}  // namespace freeq

#endif
