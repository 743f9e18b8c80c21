#pragma once

// Clusters of infinitely near points over the closed point of a regular
// surface germ, and the integer lattices they induce.
//
// Point i of a cluster is blown up to the exceptional curve E_i; the strict
// transforms E_0, ..., E_{n-1} are the canonical divisor basis everywhere in
// this library.

#include "zariski/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zariski {

using PointIndex = std::size_t;
using IntegerVector = std::vector<Integer>;

/// Location of a free point on the exceptional line of its parent: the
/// direction [1 : t] for finite t, or the direction [0 : 1] for t = infinity.
class Param {
public:
    Param() = default;
    Param(const Rational& t) : value_(t) {}  // NOLINT: implicit from a rational is natural here
    static Param infinity() {
        Param p;
        p.infinite_ = true;
        return p;
    }
    /// "inf", "∞" or a rational literal.
    static Param parse(std::string_view text);

    bool is_infinite() const noexcept { return infinite_; }
    const Rational& value() const noexcept { return value_; }

    friend bool operator==(const Param& a, const Param& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

private:
    bool infinite_ = false;
    Rational value_;
};

std::string to_string(const Param& p);

enum class PointKind { free, satellite };

struct PointRecord {
    PointIndex id = 0;
    std::optional<PointIndex> parent;  // absent only for the origin
    std::vector<PointIndex> prox;      // parent first; at most two entries
    PointKind kind = PointKind::free;
    std::optional<Param> param;
};

/// Dense row-major integer matrix. Small entries only: proximity and
/// intersection matrices have entries bounded by the number of points.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    long& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    long operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntMatrix transpose() const;
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<long> data_;
};

std::string to_string(const IntMatrix& m);

/// Intersection form of the strict transforms, stored sparsely: the dual
/// graph of the exceptional divisor is a tree, so each row has few entries.
class SparseIntersectionForm {
public:
    using Row = std::vector<std::pair<PointIndex, long>>;

    std::size_t size() const noexcept { return diag_.size(); }
    long self(PointIndex i) const { return diag_[i]; }
    /// Off-diagonal nonzeros of row i, sorted by column.
    const Row& neighbors(PointIndex i) const { return rows_[i]; }
    long entry(PointIndex i, PointIndex j) const;

    /// (D . E_i) for every i.
    RationalVector apply(std::span<const Rational> coefficients) const;
    /// (D . E_i) for a single i.
    Rational apply_row(std::span<const Rational> coefficients, PointIndex i) const;

    IntMatrix dense() const;

private:
    friend class Cluster;
    void grow();
    void add(PointIndex i, PointIndex j, long delta);

    std::vector<long> diag_;
    std::vector<Row> rows_;
};

/// Local coordinate frame at a point: which exceptional curves are the axes
/// {u = 0} and {v = 0} of the chart in which the point is the origin.
struct Frame {
    std::optional<PointIndex> axis_u;
    std::optional<PointIndex> axis_v;
};

class Cluster {
public:
    Cluster() = default;

    /// Number of exceptional curves, equal to the number of blown-up points.
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    const PointRecord& point(PointIndex i) const { return points_.at(i); }
    const std::vector<PointRecord>& points() const noexcept { return points_; }

    /// Blows up the origin, creating E_0. Only valid on an empty cluster.
    PointIndex add_origin();

    /// Appends a point on E_parent proximate only to parent. On an empty
    /// cluster, parent 0 designates the origin itself and param is ignored.
    PointIndex add_free_point(PointIndex parent, std::optional<Param> param = std::nullopt);

    /// Appends the point where E_parent meets the strict transform of E_other.
    /// Requires other < parent and (E_parent . E_other) = 1 at this stage.
    PointIndex add_satellite_point(PointIndex parent, PointIndex other);

    const SparseIntersectionForm& form() const noexcept { return form_; }

    /// Coordinate frame at point i, when every point on its ancestry carries a param.
    const std::optional<Frame>& frame(PointIndex i) const { return frames_.at(i); }

    /// Whether some point on E_parent already sits at param.
    bool has_child_at(PointIndex parent, const Param& param) const;

    friend bool operator==(const Cluster& a, const Cluster& b);

private:
    void check_index(PointIndex i, const char* what) const;
    PointIndex append(PointRecord record, std::optional<Frame> frame);

    std::vector<PointRecord> points_;
    std::vector<std::optional<Frame>> frames_;
    std::vector<std::set<std::string>> child_params_;
    SparseIntersectionForm form_;
};

/// Empty constellation: the origin is known but not yet blown up.
inline Cluster new_cluster() { return Cluster{}; }

/// Unitriangular: 1 on the diagonal, -1 at (i, j) iff point i is proximate to j.
IntMatrix proximity_matrix(const Cluster& c);

/// -(P^T P) with P the proximity matrix.
IntMatrix intersection_matrix(const Cluster& c);

/// Exact leading-principal-minor test: (-1)^k * minor_k > 0 for all k.
/// Throws DomainError on a non-square or non-symmetric matrix.
bool is_negative_definite(const IntMatrix& m);

/// Leading principal minors minor_1, ..., minor_n (fraction-free elimination).
std::vector<Integer> leading_principal_minors(const IntMatrix& m);

/// v = P^{-1} m, i.e. v_i = m_i + sum of v_j over points j that i is proximate to.
IntegerVector values_from_multiplicities(const Cluster& c, std::span<const Integer> m);

/// m = P v.
IntegerVector multiplicities_from_values(const Cluster& c, std::span<const Integer> v);

/// Star-shaped cluster: origin plus one free point on E_0 per parameter.
Cluster star_cluster(std::span<const Param> params);

/// Cluster with only the structure, parameters absent: origin plus n free points on E_0.
Cluster star_cluster(std::size_t n);

}  // namespace zariski
