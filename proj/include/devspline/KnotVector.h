#pragma once

#include <algorithm>
#include <sstream>
#include <utility>
#include <vector>

#include "common.h"
#include "errors.h"

namespace devspline {

/**
 * Knot list u_0..u_K of a degree-n spline in the polar-form indexing where
 * control point i is the blossom at (u_i, ..., u_{i+n-1}). There are no
 * phantom end knots: a clamped cubic with three pieces over [0,1] is
 * {0,0,0,0.3,0.7,1,1,1} and carries six control points.
 *
 * The domain is [u_{n-1}, u_L] with L + 1 the control-point count. Pieces are
 * the spans of the domain with positive length.
 */
template <typename Scalar>
class KnotVector
{
public:
    KnotVector(std::vector<Scalar> knots, int degree) : knots_(std::move(knots)), degree_(degree)
    {
        validate();
        build_pieces();
    }

    int degree() const { return degree_; }
    const std::vector<Scalar>& values() const { return knots_; }
    Index size() const { return static_cast<Index>(knots_.size()); }
    Scalar operator[](Index i) const { return knots_[static_cast<size_t>(i)]; }

    Index control_count() const { return size() - degree_ + 1; }
    /// Index L of the last control point.
    Index last_index() const { return control_count() - 1; }

    Scalar domain_start() const { return (*this)[degree_ - 1]; }
    Scalar domain_end() const { return (*this)[last_index()]; }
    Scalar domain_length() const { return domain_end() - domain_start(); }
    Scalar tolerance() const { return tolerance::knot_equality<Scalar> * domain_length(); }

    Index piece_count() const { return static_cast<Index>(piece_spans_.size()); }

    /// Knot index j of the span [u_j, u_{j+1}] that carries the piece.
    Index span_of_piece(Index piece) const
    {
        if (piece < 0 || piece >= piece_count()) {
            throw ArgumentError("piece index " + std::to_string(piece) + " out of range [0, " +
                                std::to_string(piece_count()) + ")");
        }
        return piece_spans_[static_cast<size_t>(piece)];
    }

    std::pair<Scalar, Scalar> piece_interval(Index piece) const
    {
        const Index j = span_of_piece(piece);
        return {(*this)[j], (*this)[j + 1]};
    }

    bool in_domain(Scalar u) const
    {
        const Scalar tol = tolerance();
        return u >= domain_start() - tol && u <= domain_end() + tol;
    }

    /// Right-continuous piece lookup; the last piece is closed on the right.
    Index piece_of(Scalar u) const
    {
        if (!in_domain(u)) {
            std::ostringstream msg;
            msg << "parameter " << u << " outside domain [" << domain_start() << ", " << domain_end()
                << "]";
            throw DomainError(msg.str());
        }
        Index lo = 0;
        Index hi = piece_count() - 1;
        while (lo < hi) {
            const Index mid = (lo + hi + 1) / 2;
            if ((*this)[piece_spans_[static_cast<size_t>(mid)]] <= u) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        return lo;
    }

    /// Number of knots equal to u within the knot tolerance.
    Index multiplicity(Scalar u) const
    {
        const Scalar tol = tolerance();
        return std::count_if(knots_.begin(), knots_.end(),
                             [&](Scalar k) { return std::abs(k - u) <= tol; });
    }

    /// First n knots equal the domain start and last n equal the domain end.
    bool is_clamped() const
    {
        return multiplicity(domain_start()) >= degree_ && multiplicity(domain_end()) >= degree_ &&
               std::abs(knots_.front() - domain_start()) <= tolerance() &&
               std::abs(knots_.back() - domain_end()) <= tolerance();
    }

    bool approx_equal(const KnotVector& other) const
    {
        if (degree_ != other.degree_ || size() != other.size()) return false;
        const Scalar tol = std::max(tolerance(), other.tolerance());
        for (Index i = 0; i < size(); ++i) {
            if (std::abs((*this)[i] - other[i]) > tol) return false;
        }
        return true;
    }

    /// Knot list of the degree n+1 curve: each distinct inner knot gains one
    /// copy, auxiliary knots are kept.
    KnotVector elevated() const
    {
        const Scalar tol = tolerance();
        std::vector<Scalar> result(knots_.begin(), knots_.end());
        std::vector<Scalar> distinct;
        for (Index i = degree_ - 1; i <= last_index(); ++i) {
            const Scalar k = (*this)[i];
            if (distinct.empty() || k - distinct.back() > tol) distinct.push_back(k);
        }
        for (Scalar k : distinct) {
            // Insert after the last copy so equal runs stay contiguous.
            auto it = std::upper_bound(result.begin(), result.end(), k + tol);
            result.insert(it, k);
        }
        return KnotVector(std::move(result), degree_ + 1);
    }

    /// Knot list with u inserted after any existing copies.
    KnotVector with_knot(Scalar u) const
    {
        std::vector<Scalar> result(knots_.begin(), knots_.end());
        result.insert(std::upper_bound(result.begin(), result.end(), u), u);
        return KnotVector(std::move(result), degree_);
    }

private:
    void validate() const
    {
        if (degree_ < 1) {
            throw MalformedKnotsError("degree must be positive, got " + std::to_string(degree_));
        }
        if (size() < 2 * degree_) {
            throw MalformedKnotsError("degree " + std::to_string(degree_) + " needs at least " +
                                      std::to_string(2 * degree_) + " knots, got " +
                                      std::to_string(size()));
        }
        for (Index i = 0; i < size(); ++i) {
            if (!std::isfinite((*this)[i])) {
                throw MalformedKnotsError("knot " + std::to_string(i) + " is not finite");
            }
            if (i > 0 && (*this)[i] < (*this)[i - 1]) {
                std::ostringstream msg;
                msg << "knots must be nondecreasing: u_" << i << " = " << (*this)[i] << " < u_"
                    << i - 1 << " = " << (*this)[i - 1];
                throw MalformedKnotsError(msg.str());
            }
        }
        if (!(domain_length() > Scalar(0))) {
            throw MalformedKnotsError("domain [u_{n-1}, u_L] has zero length");
        }
        const Scalar tol = tolerance();
        Index run = 1;
        for (Index i = 1; i < size(); ++i) {
            run = ((*this)[i] - (*this)[i - 1] <= tol) ? run + 1 : 1;
            if (run > degree_) {
                std::ostringstream msg;
                msg << "knot " << (*this)[i] << " at index " << i << " has multiplicity above degree "
                    << degree_;
                throw MalformedKnotsError(msg.str());
            }
        }
    }

    void build_pieces()
    {
        const Scalar tol = tolerance();
        for (Index j = degree_ - 1; j < last_index(); ++j) {
            if ((*this)[j + 1] - (*this)[j] > tol) piece_spans_.push_back(j);
        }
    }

    std::vector<Scalar> knots_;
    int degree_;
    std::vector<Index> piece_spans_;
};

} // namespace devspline
