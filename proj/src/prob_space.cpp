#include "chsh/prob_space.hpp"

#include <cmath>
#include <unordered_set>
#include <utility>

namespace chsh {

namespace {

std::uint64_t fnv1a_atoms(const std::vector<std::string>& atoms) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](unsigned char c) {
        h ^= c;
        h *= 0x100000001b3ULL;
    };
    for (const auto& a : atoms) {
        for (unsigned char c : a) mix(c);
        mix(0x1f); // separator so {"ab","c"} != {"a","bc"}
    }
    return h;
}

void require_same_space(std::uint64_t space_fp, std::size_t space_n, std::uint64_t other_fp, std::size_t other_n,
                        const char* what) {
    if (space_n != other_n || space_fp != other_fp)
        fail(ErrorCode::MismatchedSpace, std::string(what) + " built for a different space");
}

} // namespace

FiniteProbSpace FiniteProbSpace::make(std::vector<std::string> atoms, std::vector<Scalar> weights) {
    if (atoms.size() != weights.size())
        fail(ErrorCode::InvalidParams, "atoms and weights differ in length");
    if (atoms.empty()) fail(ErrorCode::InvalidParams, "a probability space needs at least one atom");

    std::unordered_set<std::string> seen;
    for (const auto& a : atoms)
        if (!seen.insert(a).second) fail(ErrorCode::DuplicateAtom, "atom '" + a + "' appears twice");

    bool exact = true;
    for (const auto& w : weights) {
        if (w.sign() < 0) fail(ErrorCode::NegativeWeight, "weight " + w.str() + " is negative");
        exact = exact && w.exact();
    }

    Scalar sum;
    for (const auto& w : weights) sum += w;
    if (exact) {
        if (sum.rat() != 1)
            fail(ErrorCode::NotNormalized, "rational weights sum to " + sum.str() + ", expected exactly 1");
    } else if (std::abs(sum.as_double() - 1.0) > kFloatTol) {
        fail(ErrorCode::NotNormalized, "weights sum to " + sum.str() + ", expected 1 within 1e-12");
    }

    FiniteProbSpace space;
    space.fingerprint_ = fnv1a_atoms(atoms);
    space.atoms_ = std::move(atoms);
    space.weights_ = std::move(weights);
    space.exact_ = exact;
    return space;
}

Scalar FiniteProbSpace::prob(const Event& event) const {
    require_same_space(fingerprint_, size(), event.space_fingerprint(), event.size(), "event");
    Scalar p;
    for (std::size_t i = 0; i < size(); ++i)
        if (event.contains(i)) p += weights_[i];
    return p;
}

RandomVariable RandomVariable::on(const FiniteProbSpace& space, std::vector<Scalar> values) {
    if (values.size() != space.size())
        fail(ErrorCode::MismatchedSpace, "random variable must assign a value to every atom");
    RandomVariable rv;
    rv.space_fp_ = space.fingerprint();
    rv.values_ = std::move(values);
    return rv;
}

RandomVariable RandomVariable::constant(const FiniteProbSpace& space, const Scalar& c) {
    return on(space, std::vector<Scalar>(space.size(), c));
}

Event Event::all(const FiniteProbSpace& space) {
    return of_mask(space, std::vector<char>(space.size(), 1));
}

Event Event::of_mask(const FiniteProbSpace& space, std::vector<char> mask) {
    if (mask.size() != space.size()) fail(ErrorCode::MismatchedSpace, "event mask length != atom count");
    Event e;
    e.space_fp_ = space.fingerprint();
    e.mask_ = std::move(mask);
    return e;
}

Event Event::of_indices(const FiniteProbSpace& space, const std::vector<std::size_t>& indices) {
    std::vector<char> mask(space.size(), 0);
    for (std::size_t i : indices) {
        if (i >= space.size()) fail(ErrorCode::InvalidParams, "event atom index out of range");
        mask[i] = 1;
    }
    return of_mask(space, std::move(mask));
}

Event Event::where(const FiniteProbSpace& space,
                   const std::function<bool(std::size_t, const std::string&)>& pred) {
    std::vector<char> mask(space.size(), 0);
    for (std::size_t i = 0; i < space.size(); ++i) mask[i] = pred(i, space.atom(i)) ? 1 : 0;
    return of_mask(space, std::move(mask));
}

FiniteProbSpace make_space(std::vector<std::string> atoms, std::vector<Scalar> weights) {
    return FiniteProbSpace::make(std::move(atoms), std::move(weights));
}

Scalar expectation(const FiniteProbSpace& space, const RandomVariable& rv) {
    require_same_space(space.fingerprint(), space.size(), rv.space_fingerprint(), rv.size(), "random variable");
    Scalar sum;
    for (std::size_t i = 0; i < space.size(); ++i) sum += rv.value(i) * space.weight(i);
    return sum;
}

FiniteProbSpace condition(const FiniteProbSpace& space, const Event& event) {
    Scalar p = space.prob(event);
    if (p.is_zero()) fail(ErrorCode::NullEvent, "conditioning on a probability-zero event");

    std::vector<Scalar> weights;
    weights.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        weights.push_back(event.contains(i) ? space.weight(i) / p : Scalar(0));
    // Same atoms, restricted support; invariants re-checked by the factory.
    return FiniteProbSpace::make(space.atoms(), std::move(weights));
}

Scalar conditional_expectation(const FiniteProbSpace& space, const RandomVariable& rv, const Event& event) {
    return expectation(condition(space, event), rv);
}

Scalar correlation(const FiniteProbSpace& space, const RandomVariable& rv1, const RandomVariable& rv2) {
    require_same_space(space.fingerprint(), space.size(), rv1.space_fingerprint(), rv1.size(), "random variable");
    require_same_space(space.fingerprint(), space.size(), rv2.space_fingerprint(), rv2.size(), "random variable");
    Scalar sum;
    for (std::size_t i = 0; i < space.size(); ++i) sum += rv1.value(i) * rv2.value(i) * space.weight(i);
    return sum;
}

RandomVariable product(const RandomVariable& a, const RandomVariable& b) {
    if (a.size() != b.size() || a.space_fingerprint() != b.space_fingerprint())
        fail(ErrorCode::MismatchedSpace, "product of random variables on different spaces");
    RandomVariable out;
    out.space_fp_ = a.space_fingerprint();
    out.values_.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.values_.push_back(a.value(i) * b.value(i));
    return out;
}

ChshReport make_chsh_report(const std::array<Scalar, 4>& terms, std::initializer_list<double> bound_list,
                            double tol) {
    ChshReport report;
    report.terms = terms;
    report.s = terms[0] + terms[1] + terms[2] - terms[3];
    for (double b : bound_list) report.bounds.push_back({b, report.abs_s() <= b + tol});
    return report;
}

ChshReport chsh_value(const FiniteProbSpace& space, const RandomVariable& a1, const RandomVariable& a2,
                      const RandomVariable& b1, const RandomVariable& b2) {
    const RandomVariable* rvs[4] = {&a1, &a2, &b1, &b2};
    const char* names[4] = {"A1", "A2", "B1", "B2"};
    for (int k = 0; k < 4; ++k) {
        require_same_space(space.fingerprint(), space.size(), rvs[k]->space_fingerprint(), rvs[k]->size(),
                           "random variable");
        for (std::size_t i = 0; i < rvs[k]->size(); ++i) {
            const Scalar& v = rvs[k]->value(i);
            bool ok = v.exact() ? (v.rat() >= -1 && v.rat() <= 1) : std::abs(v.as_double()) <= 1.0 + kFloatTol;
            if (!ok)
                fail(ErrorCode::RangeViolation,
                     std::string(names[k]) + " takes value " + v.str() + " outside [-1,1]");
        }
    }
    std::array<Scalar, 4> terms = {correlation(space, a1, b1), correlation(space, a1, b2),
                                   correlation(space, a2, b1), correlation(space, a2, b2)};
    return make_chsh_report(terms, {2.0});
}

} // namespace chsh
