#include "zariski/cluster.hpp"

#include <algorithm>
#include <sstream>

namespace zariski {

Param Param::parse(std::string_view text) {
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    if (text == "inf" || text == "infinity" || text == "\xE2\x88\x9E")
        return infinity();
    return Param(parse_rational(text));
}

std::string to_string(const Param& p) { return p.is_infinite() ? "inf" : to_string(p.value()); }

// ---------------------------------------------------------------------------

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw DomainError("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_)
        throw DomainError("matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const long aik = a(i, k);
            if (aik == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

IntMatrix operator-(const IntMatrix& a) {
    IntMatrix r = a;
    for (auto& x : r.data_)
        x = -x;
    return r;
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            out << (j ? ", " : "") << m(i, j);
        out << ']';
    }
    out << ']';
    return out.str();
}

// ---------------------------------------------------------------------------

long SparseIntersectionForm::entry(PointIndex i, PointIndex j) const {
    if (i == j)
        return diag_.at(i);
    const Row& row = rows_.at(i);
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const auto& e, PointIndex k) { return e.first < k; });
    return (it != row.end() && it->first == j) ? it->second : 0;
}

RationalVector SparseIntersectionForm::apply(std::span<const Rational> coefficients) const {
    if (coefficients.size() != size())
        throw DomainError("divisor length does not match the intersection form");
    RationalVector out(size());
    for (PointIndex i = 0; i < size(); ++i)
        out[i] = apply_row(coefficients, i);
    return out;
}

Rational SparseIntersectionForm::apply_row(std::span<const Rational> coefficients, PointIndex i) const {
    Rational acc = coefficients[i] * diag_[i];
    for (const auto& [j, w] : rows_[i])
        acc += coefficients[j] * w;
    return acc;
}

IntMatrix SparseIntersectionForm::dense() const {
    IntMatrix m(size(), size());
    for (PointIndex i = 0; i < size(); ++i) {
        m(i, i) = diag_[i];
        for (const auto& [j, w] : rows_[i])
            m(i, j) = w;
    }
    return m;
}

void SparseIntersectionForm::grow() {
    diag_.push_back(0);
    rows_.emplace_back();
}

void SparseIntersectionForm::add(PointIndex i, PointIndex j, long delta) {
    if (i == j) {
        diag_[i] += delta;
        return;
    }
    auto bump = [delta](Row& row, PointIndex k) {
        auto it = std::lower_bound(row.begin(), row.end(), k,
                                   [](const auto& e, PointIndex key) { return e.first < key; });
        if (it != row.end() && it->first == k) {
            it->second += delta;
            if (it->second == 0)
                row.erase(it);
        } else {
            row.insert(it, {k, delta});
        }
    };
    bump(rows_[i], j);
    bump(rows_[j], i);
}

// ---------------------------------------------------------------------------

void Cluster::check_index(PointIndex i, const char* what) const {
    if (i >= points_.size())
        throw StructuralError(std::string(what) + " point " + std::to_string(i) + " does not exist");
}

PointIndex Cluster::append(PointRecord record, std::optional<Frame> frame) {
    const PointIndex q = points_.size();
    record.id = q;
    form_.grow();
    // Blowing up q adds the row r = e_q - sum_{j in prox} e_j to P, so
    // -(P^T P) changes by -(r r^T).
    std::vector<std::pair<PointIndex, long>> r{{q, 1}};
    for (PointIndex j : record.prox)
        r.emplace_back(j, -1);
    for (const auto& [a, ra] : r)
        for (const auto& [b, rb] : r)
            if (a <= b)
                form_.add(a, b, -ra * rb);
    if (record.parent && record.param)
        child_params_[*record.parent].insert(to_string(*record.param));
    points_.push_back(std::move(record));
    frames_.push_back(frame);
    child_params_.emplace_back();
    return q;
}

PointIndex Cluster::add_origin() {
    if (!points_.empty())
        throw StructuralError("the origin has already been blown up");
    PointRecord rec;
    return append(std::move(rec), Frame{});
}

bool Cluster::has_child_at(PointIndex parent, const Param& param) const {
    return parent < child_params_.size() && child_params_[parent].count(to_string(param)) > 0;
}

PointIndex Cluster::add_free_point(PointIndex parent, std::optional<Param> param) {
    if (points_.empty() && parent == 0)
        return add_origin();
    check_index(parent, "parent");
    std::optional<Frame> frame;
    if (param) {
        if (has_child_at(parent, *param))
            throw StructuralError("coincident point: E_" + std::to_string(parent) +
                                  " already carries a point at parameter " + to_string(*param));
        if (const auto& pf = frames_[parent]) {
            // On E_parent, t = 0 lies on the curve {v = 0} and t = inf on {u = 0}.
            if (!param->is_infinite() && param->value() == 0 && pf->axis_v)
                throw StructuralError("parameter 0 on E_" + std::to_string(parent) +
                                      " is the satellite point on E_" + std::to_string(*pf->axis_v));
            if (param->is_infinite() && pf->axis_u)
                throw StructuralError("parameter inf on E_" + std::to_string(parent) +
                                      " is the satellite point on E_" + std::to_string(*pf->axis_u));
            frame = param->is_infinite() ? Frame{std::nullopt, parent} : Frame{parent, std::nullopt};
        }
    }
    PointRecord rec;
    rec.parent = parent;
    rec.prox = {parent};
    rec.kind = PointKind::free;
    rec.param = std::move(param);
    return append(std::move(rec), frame);
}

PointIndex Cluster::add_satellite_point(PointIndex parent, PointIndex other) {
    check_index(parent, "parent");
    check_index(other, "other");
    if (other >= parent)
        throw StructuralError("satellite: the other curve must precede the parent");
    if (form_.entry(parent, other) != 1)
        throw StructuralError("satellite: E_" + std::to_string(parent) + " and E_" + std::to_string(other) +
                              " do not meet");
    std::optional<Param> param;
    std::optional<Frame> frame;
    if (const auto& pf = frames_[parent]) {
        if (pf->axis_v == other) {
            param = Param(Rational(0));
            frame = Frame{parent, other};
        } else if (pf->axis_u == other) {
            param = Param::infinity();
            frame = Frame{other, parent};
        } else {
            throw StructuralError("satellite: frame at point " + std::to_string(parent) +
                                  " does not contain E_" + std::to_string(other));
        }
    }
    PointRecord rec;
    rec.parent = parent;
    rec.prox = {parent, other};
    rec.kind = PointKind::satellite;
    rec.param = param;
    return append(std::move(rec), frame);
}

bool operator==(const Cluster& a, const Cluster& b) {
    if (a.size() != b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& p = a.points_[i];
        const auto& q = b.points_[i];
        if (p.parent != q.parent || p.prox != q.prox || p.kind != q.kind || p.param != q.param)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

IntMatrix proximity_matrix(const Cluster& c) {
    IntMatrix p(c.size(), c.size());
    for (const auto& rec : c.points()) {
        p(rec.id, rec.id) = 1;
        for (PointIndex j : rec.prox)
            p(rec.id, j) = -1;
    }
    return p;
}

IntMatrix intersection_matrix(const Cluster& c) {
    const IntMatrix p = proximity_matrix(c);
    return -(p.transpose() * p);
}

namespace {

using IntegerMatrix = std::vector<std::vector<Integer>>;

IntegerMatrix leading_block(const IntMatrix& m, std::size_t k) {
    IntegerMatrix a(k, std::vector<Integer>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            a[i][j] = static_cast<long>(m(i, j));
    return a;
}

// Fraction-free (Bareiss) determinant with row pivoting.
Integer determinant(IntegerMatrix a) {
    const std::size_t n = a.size();
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return n == 0 ? Integer(1) : Integer(sign * a[n - 1][n - 1]);
}

}  // namespace

std::vector<Integer> leading_principal_minors(const IntMatrix& m) {
    if (m.rows() != m.cols())
        throw DomainError("leading minors of a non-square matrix");
    const std::size_t n = m.rows();
    IntegerMatrix a = leading_block(m, n);
    // Without pivoting, the k-th Bareiss pivot is the k-th leading minor.
    std::vector<Integer> minors;
    minors.reserve(n);
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        minors.push_back(a[k][k]);
        if (a[k][k] == 0) {
            for (std::size_t r = k + 2; r <= n; ++r)
                minors.push_back(determinant(leading_block(m, r)));
            break;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return minors;
}

bool is_negative_definite(const IntMatrix& m) {
    if (m.rows() != m.cols())
        throw DomainError("negative definiteness of a non-square matrix");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i))
                throw DomainError("negative definiteness of a non-symmetric matrix");
    const auto minors = leading_principal_minors(m);
    for (std::size_t k = 0; k < minors.size(); ++k) {
        const int expected = (k % 2 == 0) ? -1 : 1;  // sign of minor_{k+1}
        if (sgn(minors[k]) != expected)
            return false;
    }
    return true;
}

IntegerVector values_from_multiplicities(const Cluster& c, std::span<const Integer> m) {
    if (m.size() != c.size())
        throw DomainError("multiplicity vector has length " + std::to_string(m.size()) + ", cluster has " +
                          std::to_string(c.size()) + " curves");
    IntegerVector v(m.begin(), m.end());
    for (const auto& rec : c.points())
        for (PointIndex j : rec.prox)
            v[rec.id] += v[j];
    return v;
}

IntegerVector multiplicities_from_values(const Cluster& c, std::span<const Integer> v) {
    if (v.size() != c.size())
        throw DomainError("value vector has length " + std::to_string(v.size()) + ", cluster has " +
                          std::to_string(c.size()) + " curves");
    IntegerVector m(v.begin(), v.end());
    for (const auto& rec : c.points())
        for (PointIndex j : rec.prox)
            m[rec.id] -= v[j];
    return m;
}

Cluster star_cluster(std::span<const Param> params) {
    Cluster c;
    c.add_origin();
    for (const auto& t : params)
        c.add_free_point(0, t);
    return c;
}

Cluster star_cluster(std::size_t n) {
    Cluster c;
    c.add_origin();
    for (std::size_t i = 0; i < n; ++i)
        c.add_free_point(0);
    return c;
}

}  // namespace zariski
