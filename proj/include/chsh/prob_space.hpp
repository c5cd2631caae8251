#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "chsh/error.hpp"
#include "chsh/scalar.hpp"

namespace chsh {

class Event;
class RandomVariable;

/// Finite Kolmogorov probability space: ordered atoms with weights that are
/// nonnegative and sum to one (exactly in rational mode, within 1e-12 in
/// float mode). The sigma-algebra is implicitly the power set. Immutable.
class FiniteProbSpace {
public:
    static FiniteProbSpace make(std::vector<std::string> atoms, std::vector<Scalar> weights);

    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    const std::string& atom(std::size_t i) const { return atoms_[i]; }
    const Scalar& weight(std::size_t i) const { return weights_[i]; }
    const std::vector<Scalar>& weights() const noexcept { return weights_; }

    /// True when every weight is an exact rational.
    bool exact() const noexcept { return exact_; }

    /// Identity of the atom set (weights excluded): random variables and
    /// events built for this space stay valid on any reweighting of it,
    /// in particular on conditioned versions.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    Scalar prob(const Event& event) const;

private:
    FiniteProbSpace() = default;
    std::vector<std::string> atoms_;
    std::vector<Scalar> weights_;
    std::uint64_t fingerprint_ = 0;
    bool exact_ = true;
};

/// Total map atom -> value on a fixed space.
class RandomVariable {
public:
    static RandomVariable on(const FiniteProbSpace& space, std::vector<Scalar> values);

    template <class F>
    static RandomVariable map(const FiniteProbSpace& space, F&& f) {
        std::vector<Scalar> values;
        values.reserve(space.size());
        for (std::size_t i = 0; i < space.size(); ++i) values.push_back(Scalar(f(i)));
        return on(space, std::move(values));
    }

    static RandomVariable constant(const FiniteProbSpace& space, const Scalar& c);

    std::size_t size() const noexcept { return values_.size(); }
    const Scalar& value(std::size_t i) const { return values_[i]; }
    const std::vector<Scalar>& values() const noexcept { return values_; }
    std::uint64_t space_fingerprint() const noexcept { return space_fp_; }

private:
    friend RandomVariable product(const RandomVariable&, const RandomVariable&);
    std::uint64_t space_fp_ = 0;
    std::vector<Scalar> values_;
};

/// Atom subset of a fixed space, stored as a membership mask.
class Event {
public:
    static Event all(const FiniteProbSpace& space);
    static Event of_mask(const FiniteProbSpace& space, std::vector<char> mask);
    static Event of_indices(const FiniteProbSpace& space, const std::vector<std::size_t>& indices);
    static Event where(const FiniteProbSpace& space,
                       const std::function<bool(std::size_t, const std::string&)>& pred);

    bool contains(std::size_t i) const { return mask_[i] != 0; }
    std::size_t size() const noexcept { return mask_.size(); }
    const std::vector<char>& mask() const noexcept { return mask_; }
    std::uint64_t space_fingerprint() const noexcept { return space_fp_; }

private:
    std::uint64_t space_fp_ = 0;
    std::vector<char> mask_;
};

struct BoundVerdict {
    double bound = 0;
    bool satisfied = false;
};

/// CHSH combination of four pair correlations, with the verdicts the caller
/// wants it judged against (2 for one-space variables, 4 and 8 for the
/// conditional variant).
struct ChshReport {
    std::array<Scalar, 4> terms; // <A1,B1>, <A1,B2>, <A2,B1>, <A2,B2>
    Scalar s;                    // terms[0] + terms[1] + terms[2] - terms[3]
    std::vector<BoundVerdict> bounds;

    double abs_s() const { return s.sign() < 0 ? (-s).as_double() : s.as_double(); }
};

ChshReport make_chsh_report(const std::array<Scalar, 4>& terms, std::initializer_list<double> bound_list,
                            double tol = kFloatTol);

// prob_core operations

FiniteProbSpace make_space(std::vector<std::string> atoms, std::vector<Scalar> weights);

Scalar expectation(const FiniteProbSpace& space, const RandomVariable& rv);

/// Bayes conditioning: weights P(w)/P(event) on event atoms, zero elsewhere.
/// Conditioning on a null event is an error, never NaN or zero.
FiniteProbSpace condition(const FiniteProbSpace& space, const Event& event);

Scalar conditional_expectation(const FiniteProbSpace& space, const RandomVariable& rv, const Event& event);

/// Uncentered product moment E(rv1 * rv2), not Pearson correlation.
Scalar correlation(const FiniteProbSpace& space, const RandomVariable& rv1, const RandomVariable& rv2);

RandomVariable product(const RandomVariable& a, const RandomVariable& b);

/// S = <A1,B1> + <A1,B2> + <A2,B1> - <A2,B2> for [-1,1]-valued variables on
/// one space, judged against the bound 2.
ChshReport chsh_value(const FiniteProbSpace& space, const RandomVariable& a1, const RandomVariable& a2,
                      const RandomVariable& b1, const RandomVariable& b2);

} // namespace chsh
