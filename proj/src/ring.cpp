#include <freeq/errors.hpp>
#include <freeq/ring.hpp>

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace freeq {

Polynomial Polynomial::monomial(const Exponents& e, Rational coeff)
{
    Polynomial p(e.size());
    p.add_term(e, coeff);
    return p;
}

Polynomial Polynomial::constant(std::size_t nvars, Rational c)
{
    return monomial(Exponents(nvars, 0), std::move(c));
}

void Polynomial::add_term(const Exponents& e, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = m_terms.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            m_terms.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const
{
    Polynomial out = *this;
    for (const auto& [e, c] : rhs.m_terms)
        out.add_term(e, c);
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const
{
    Polynomial out(m_nvars);
    for (const auto& [a, ca] : m_terms)
        for (const auto& [b, cb] : rhs.m_terms) {
            Exponents e(m_nvars);
            for (std::size_t i = 0; i < m_nvars; ++i)
                e[i] = a[i] + b[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial Polynomial::operator*(const Rational& s) const
{
    Polynomial out(m_nvars);
    for (const auto& [e, c] : m_terms)
        out.add_term(e, c * s);
    return out;
}

void RingElement::add_term(const RingTerm& t, const Rational& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = m_terms.emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            m_terms.erase(it);
    }
}

bool RingElement::is_homogeneous() const
{
    if (m_terms.empty())
        return true;
    const int d = m_ring->degree(m_terms.begin()->first.monomial);
    return std::all_of(m_terms.begin(), m_terms.end(),
                       [&](const auto& kv) { return m_ring->degree(kv.first.monomial) == d; });
}

int RingElement::degree() const
{
    if (m_terms.empty())
        throw ValidationError("degree of the zero element");
    if (!is_homogeneous())
        throw ValidationError("element " + to_string() + " is not homogeneous");
    return m_ring->degree(m_terms.begin()->first.monomial);
}

RingElement RingElement::operator+(const RingElement& rhs) const
{
    RingElement out = *this;
    if (!out.m_ring)
        out.m_ring = rhs.m_ring;
    for (const auto& [t, c] : rhs.m_terms)
        out.add_term(t, c);
    return out;
}

std::string RingElement::to_string() const
{
    if (m_terms.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : m_terms) {
        std::string mono = m_ring->monomial_string(t.monomial);
        const std::string& g = m_ring->group()->name(t.group_element);
        bool unit_mono = mono == "1";
        bool unit_group = t.group_element == m_ring->group()->identity();
        std::string body;
        if (unit_mono && unit_group)
            body = "1";
        else if (unit_mono)
            body = g;
        else if (unit_group)
            body = mono;
        else
            body = mono + "*" + g;
        Rational a = abs(c);
        os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
        if (a == 1)
            os << body;
        else
            os << freeq::to_string(a) << (body == "1" ? "" : "*" + body);
        first = false;
    }
    return os.str();
}

int TwistedGroupRing::degree(const Exponents& e) const
{
    int d = 0;
    for (std::size_t i = 0; i < e.size(); ++i)
        d += static_cast<int>(e[i]) * m_gens.degrees[i];
    return d;
}

int TwistedGroupRing::max_abs_degree() const
{
    int m = 0;
    for (int d : m_gens.degrees)
        m = std::max(m, std::abs(d));
    return m == 0 ? 2 : m;
}

int TwistedGroupRing::min_abs_degree() const
{
    int m = 0;
    for (int d : m_gens.degrees)
        m = m == 0 ? std::abs(d) : std::min(m, std::abs(d));
    return m == 0 ? 2 : m;
}

std::vector<Exponents> enumerate_monomials(const std::vector<int>& degrees, int t)
{
    std::vector<Exponents> out;
    const std::size_t r = degrees.size();
    if (t > 0)
        return out;
    Exponents cur(r, 0);
    // Depth-first over variables; larger exponents of earlier variables first
    // yields MonomialOrder directly.
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int remaining) {
        if (i == r) {
            if (remaining == 0)
                out.push_back(cur);
            return;
        }
        const int step = -degrees[i];
        for (int k = -remaining / step; k >= 0; --k) {
            cur[i] = static_cast<unsigned>(k);
            rec(i + 1, remaining + k * step);
        }
        cur[i] = 0;
    };
    rec(0, t);
    return out;
}

const std::vector<Exponents>& TwistedGroupRing::monomials(int t) const
{
    std::lock_guard<std::mutex> lock(m_mutex);
    auto it = m_monomials.find(t);
    if (it != m_monomials.end())
        return it->second;
    auto mons = enumerate_monomials(m_gens.degrees, t);
    auto& index = m_monomial_index[t];
    for (std::size_t k = 0; k < mons.size(); ++k)
        index.emplace(mons[k], k);
    return m_monomials.emplace(t, std::move(mons)).first->second;
}

std::size_t TwistedGroupRing::monomial_index(int t, const Exponents& e) const
{
    monomials(t);
    std::lock_guard<std::mutex> lock(m_mutex);
    const auto& index = m_monomial_index.at(t);
    auto it = index.find(e);
    if (it == index.end())
        throw InvariantError("monomial " + monomial_string(e) + " is not in degree " + std::to_string(t));
    return it->second;
}

Polynomial TwistedGroupRing::act(std::size_t w, const Polynomial& p) const
{
    const std::size_t r = rank();
    const Matrix& A = m_gens.action(w);
    std::vector<Polynomial> images;
    for (std::size_t j = 0; j < r; ++j) {
        Polynomial img(r);
        for (std::size_t i = 0; i < r; ++i) {
            Exponents e(r, 0);
            e[i] = 1;
            img.add_term(e, A(i, j));
        }
        images.push_back(std::move(img));
    }
    Polynomial out(r);
    for (const auto& [e, c] : p.terms()) {
        Polynomial term = Polynomial::constant(r, c);
        for (std::size_t j = 0; j < r; ++j)
            for (unsigned k = 0; k < e[j]; ++k)
                term = term * images[j];
        out = out + term;
    }
    return out;
}

const Matrix& TwistedGroupRing::action_matrix(std::size_t w, int t) const
{
    {
        std::lock_guard<std::mutex> lock(m_mutex);
        auto it = m_action.find({w, t});
        if (it != m_action.end())
            return it->second;
    }
    const auto& mons = monomials(t);
    Matrix m(mons.size(), mons.size());
    for (std::size_t k = 0; k < mons.size(); ++k) {
        Polynomial img = act(w, Polynomial::monomial(mons[k]));
        for (const auto& [e, c] : img.terms())
            m(monomial_index(t, e), k) = c;
    }
    std::lock_guard<std::mutex> lock(m_mutex);
    return m_action.emplace(std::make_pair(w, t), std::move(m)).first->second;
}

std::vector<RingTerm> TwistedGroupRing::graded_piece(int t) const
{
    std::vector<RingTerm> out;
    for (const auto& m : monomials(t))
        for (std::size_t g = 0; g < m_group->order(); ++g)
            out.push_back({m, g});
    return out;
}

RingElement TwistedGroupRing::one() const
{
    return group_element(m_group->identity());
}

RingElement TwistedGroupRing::generator(std::size_t i) const
{
    RingElement x(shared_from_this());
    Exponents e(rank(), 0);
    e.at(i) = 1;
    x.add_term({e, m_group->identity()}, 1);
    return x;
}

RingElement TwistedGroupRing::group_element(std::size_t w) const
{
    RingElement x(shared_from_this());
    x.add_term({Exponents(rank(), 0), w}, 1);
    return x;
}

RingElement TwistedGroupRing::multiply(const RingElement& a, const RingElement& b) const
{
    if ((a.ring() && a.ring().get() != this) || (b.ring() && b.ring().get() != this))
        throw ValidationError("multiply: element belongs to a different ring");
    RingElement out(shared_from_this());
    for (const auto& [ta, ca] : a.terms())
        for (const auto& [tb, cb] : b.terms()) {
            Polynomial twisted = act(ta.group_element, Polynomial::monomial(tb.monomial));
            const std::size_t g = m_group->mul(ta.group_element, tb.group_element);
            for (const auto& [e, c] : twisted.terms()) {
                Exponents sum(rank());
                for (std::size_t i = 0; i < rank(); ++i)
                    sum[i] = ta.monomial[i] + e[i];
                out.add_term({sum, g}, ca * cb * c);
            }
        }
    return out;
}

std::map<int, std::vector<Exponents>> TwistedGroupRing::augmentation_ideal_basis(int t_min, int t_max) const
{
    std::map<int, std::vector<Exponents>> out;
    for (int t = t_min; t <= t_max; ++t)
        out[t] = t < 0 ? monomials(t) : std::vector<Exponents>{};
    return out;
}

std::string TwistedGroupRing::monomial_string(const Exponents& e) const
{
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0)
            continue;
        if (!s.empty())
            s += "*";
        s += m_gens.names[i];
        if (e[i] > 1)
            s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

RingPtr build_ring(GeneratorSpace gens, GroupPtr group)
{
    const std::size_t r = gens.degrees.size();
    if (!group)
        throw ValidationError("ring needs a group");
    if (gens.names.size() != r)
        throw ValidationError("generator names and degrees differ in length");
    for (std::size_t i = 0; i < r; ++i)
        if (gens.degrees[i] >= 0 || gens.degrees[i] % 2 != 0)
            throw ValidationError("generator " + gens.names[i] + " has degree " + std::to_string(gens.degrees[i]) +
                                  "; polynomial generators must have even negative degree");
    if (!gens.action.group())
        gens.action = Representation::trivial(group, r);
    if (gens.action.group() != group && !(*gens.action.group() == *group))
        throw ValidationError("generator action is over a different group");
    if (gens.action.dim() != r)
        throw ValidationError("generator action has dimension " + std::to_string(gens.action.dim()) + ", expected " +
                              std::to_string(r));
    gens.action.validate();
    for (std::size_t g = 0; g < group->order(); ++g)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                if (gens.action(g)(i, j) != 0 && gens.degrees[i] != gens.degrees[j])
                    throw ValidationError("action of " + group->name(g) + " mixes " + gens.names[j] + " (degree " +
                                          std::to_string(gens.degrees[j]) + ") into " + gens.names[i] +
                                          " (degree " + std::to_string(gens.degrees[i]) + ")");
    auto ring = std::shared_ptr<TwistedGroupRing>(new TwistedGroupRing());
    ring->m_gens = std::move(gens);
    ring->m_group = std::move(group);
    return ring;
}

RingPtr underlying_polynomial_ring(const TwistedGroupRing& ring)
{
    GeneratorSpace gens = ring.generators();
    GroupPtr triv = trivial_group();
    gens.action = Representation::trivial(triv, gens.size());
    return build_ring(std::move(gens), std::move(triv));
}

bool same_ring(const TwistedGroupRing& a, const TwistedGroupRing& b)
{
    if (&a == &b)
        return true;
    if (a.generators().degrees != b.generators().degrees || !(*a.group() == *b.group()))
        return false;
    return a.generators().action.matrices() == b.generators().action.matrices();
}

}  // namespace freeq
