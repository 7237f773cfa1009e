#include "halfspace/lgv.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace halfspace {

WeightedDag::WeightedDag(int vertex_count, std::vector<Edge> edges, std::vector<int> origins,
                         std::vector<int> destinations)
    : vertex_count_(vertex_count),
      edges_(std::move(edges)),
      origins_(std::move(origins)),
      destinations_(std::move(destinations)),
      adj_(vertex_count) {
    auto check_vertex = [&](int v) {
        if (v < 0 || v >= vertex_count_) throw StructureError("WeightedDag: vertex id out of range");
    };
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Edge& ed = edges_[e];
        check_vertex(ed.src);
        check_vertex(ed.dst);
        if (ed.weight.sign() < 0) throw StructureError("WeightedDag: negative edge weight");
        if (ed.multiplicity < 1) throw StructureError("WeightedDag: multiplicity must be >= 1");
        adj_[ed.src].push_back(static_cast<int>(e));
    }
    for (int v : origins_) check_vertex(v);
    for (int v : destinations_) check_vertex(v);

    // Kahn topological sort; a leftover vertex means a cycle.
    std::vector<int> indeg(vertex_count_, 0);
    for (const Edge& ed : edges_) ++indeg[ed.dst];
    std::vector<int> stack;
    for (int v = 0; v < vertex_count_; ++v)
        if (indeg[v] == 0) stack.push_back(v);
    topo_.reserve(vertex_count_);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        topo_.push_back(v);
        for (int e : adj_[v])
            if (--indeg[edges_[e].dst] == 0) stack.push_back(edges_[e].dst);
    }
    if (static_cast<int>(topo_.size()) != vertex_count_)
        throw StructureError("WeightedDag: graph has a cycle");
}

std::string WeightedDag::to_json() const {
    nlohmann::json j;
    j["vertices"] = vertex_count_;
    auto es = nlohmann::json::array();
    for (const Edge& e : edges_)
        es.push_back({e.src, e.dst, e.weight.to_string(), e.multiplicity});
    j["edges"] = es;
    j["origins"] = origins_;
    j["destinations"] = destinations_;
    return j.dump();
}

WeightedDag WeightedDag::from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges"))
        edges.push_back(Edge{e.at(0).get<int>(), e.at(1).get<int>(),
                             Rational::from_string(e.at(2).get<std::string>()),
                             e.at(3).get<int>()});
    return WeightedDag(j.at("vertices").get<int>(), std::move(edges),
                       j.at("origins").get<std::vector<int>>(),
                       j.at("destinations").get<std::vector<int>>());
}

Rational count_paths(const WeightedDag& g, int o, int d) {
    std::vector<Rational> ways(g.vertex_count());
    ways[o] = Rational(1);
    for (int v : g.topological_order()) {
        if (ways[v].is_zero()) continue;
        if (v == d) continue;  // paths end at d; the DAG cannot revisit it
        for (int e : g.adjacency()[v]) {
            const auto& ed = g.edges()[e];
            ways[ed.dst] += ways[v] * ed.weight * Rational(ed.multiplicity);
        }
    }
    return ways[d];
}

ExactMatrix path_matrix(const WeightedDag& g) {
    const std::size_t n = g.origins().size();
    const std::size_t m = g.destinations().size();
    ExactMatrix a(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            a.at(i, j) = count_paths(g, g.origins()[i], g.destinations()[j]);
    return a;
}

namespace {

// Depth-first enumeration of one sigma-system: pick a path for each pair in
// turn, blocking its vertices, and sum the weight products of complete
// vertex-disjoint systems.
class SystemEnumerator {
  public:
    explicit SystemEnumerator(const WeightedDag& g) : g_(g), blocked_(g.vertex_count(), 0) {}

    Rational run(const std::vector<int>& origins, const std::vector<int>& dests) {
        origins_ = &origins;
        dests_ = &dests;
        total_ = Rational(0);
        recurse_pair(0, Rational(1));
        return total_;
    }

  private:
    void recurse_pair(std::size_t level, const Rational& acc) {
        if (level == origins_->size()) {
            total_ += acc;
            return;
        }
        walk((*origins_)[level], (*dests_)[level], level, acc);
    }

    void walk(int v, int d, std::size_t level, const Rational& acc) {
        if (blocked_[v]) return;
        blocked_[v] = 1;
        if (v == d) {
            recurse_pair(level + 1, acc);
        } else {
            for (int e : g_.adjacency()[v]) {
                const auto& ed = g_.edges()[e];
                if (ed.weight.is_zero()) continue;
                if (ed.weight == Rational(1) && ed.multiplicity == 1)
                    walk(ed.dst, d, level, acc);
                else
                    walk(ed.dst, d, level, acc * ed.weight * Rational(ed.multiplicity));
            }
        }
        blocked_[v] = 0;
    }

    const WeightedDag& g_;
    std::vector<char> blocked_;
    const std::vector<int>* origins_ = nullptr;
    const std::vector<int>* dests_ = nullptr;
    Rational total_;
};

}  // namespace

LgvResult enumerate_nonintersecting(const WeightedDag& g, long path_bound) {
    const std::size_t n = g.origins().size();
    if (n == 0 || g.destinations().size() != n)
        throw StructureError("enumerate_nonintersecting: need matching origin/destination lists");

    // Guard: plain path counts (weights ignored, parallel edges counted) per pair.
    {
        std::vector<WeightedDag::Edge> unit_edges = g.edges();
        for (auto& e : unit_edges) e.weight = Rational(1);
        WeightedDag unit(g.vertex_count(), std::move(unit_edges), g.origins(), g.destinations());
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational c = count_paths(unit, g.origins()[i], g.destinations()[j]);
                if (c > Rational(path_bound))
                    throw ResourceError("enumerate_nonintersecting: path count " + c.to_string() +
                                        " exceeds bound " + std::to_string(path_bound));
            }
    }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rational signed_total;
    Rational identity_count;
    bool non_permutable = true;
    SystemEnumerator enumerator(g);
    do {
        int sign = 1;  // parity by inversion count
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        std::vector<int> dests(n);
        for (std::size_t i = 0; i < n; ++i) dests[i] = g.destinations()[perm[i]];
        Rational contribution = enumerator.run(g.origins(), dests);
        bool is_identity = std::is_sorted(perm.begin(), perm.end());
        if (is_identity)
            identity_count = contribution;
        else if (!contribution.is_zero())
            non_permutable = false;
        signed_total += (sign > 0) ? contribution : -contribution;
    } while (std::next_permutation(perm.begin(), perm.end()));

    LgvResult r;
    r.enumerated = signed_total;
    r.identity_count = identity_count;
    r.non_permutable = non_permutable;
    r.determinant = path_matrix(g).det();
    return r;
}

LgvResult lgv_check(const WeightedDag& g, long path_bound) {
    return enumerate_nonintersecting(g, path_bound);
}

WeightedDag grid_rectangle(int ew, int ns, std::vector<std::pair<int, int>> origins,
                           std::vector<std::pair<int, int>> destinations) {
    auto id = [&](int x, int y) { return y * (ew + 1) + x; };
    std::vector<WeightedDag::Edge> edges;
    for (int y = 0; y <= ns; ++y)
        for (int x = 0; x <= ew; ++x) {
            if (x < ew) edges.push_back({id(x, y), id(x + 1, y), Rational(1), 1});
            if (y < ns) edges.push_back({id(x, y), id(x, y + 1), Rational(1), 1});
        }
    std::vector<int> o, d;
    for (auto [x, y] : origins) o.push_back(id(x, y));
    for (auto [x, y] : destinations) d.push_back(id(x, y));
    return WeightedDag((ew + 1) * (ns + 1), std::move(edges), std::move(o), std::move(d));
}

namespace {

// Triangular lattice helper: integer points lo <= x <= y <= hi, edges east
// and north, with north edges leaving the diagonal doubled when requested.
WeightedDag triangle_lattice(int lo, int hi, bool doubled_diagonal,
                             const std::vector<std::pair<int, int>>& origins,
                             const std::vector<std::pair<int, int>>& destinations) {
    std::map<std::pair<int, int>, int> ids;
    for (int y = lo; y <= hi; ++y)
        for (int x = lo; x <= y; ++x) ids[{x, y}] = static_cast<int>(ids.size());
    std::vector<WeightedDag::Edge> edges;
    for (auto& [xy, v] : ids) {
        auto [x, y] = xy;
        if (y < hi) {
            int mult = (doubled_diagonal && x == y) ? 2 : 1;
            edges.push_back({v, ids.at({x, y + 1}), Rational(1), mult});
        }
        if (x < y) edges.push_back({v, ids.at({x + 1, y}), Rational(1), 1});
    }
    std::vector<int> o, d;
    for (auto xy : origins) o.push_back(ids.at(xy));
    for (auto xy : destinations) d.push_back(ids.at(xy));
    return WeightedDag(static_cast<int>(ids.size()), std::move(edges), std::move(o),
                       std::move(d));
}

}  // namespace

WeightedDag grid_binomial(std::size_t n, bool shifted) {
    if (n == 0) throw DimensionError("grid_binomial: n must be >= 1");
    const int nn = static_cast<int>(n);
    std::vector<std::pair<int, int>> o, d;
    if (!shifted) {
        // 2n-1 diagonal vertices; o_0 and d_0 coincide at the center.
        for (int i = 0; i < nn; ++i) o.push_back({-i, -i});
        for (int j = 0; j < nn; ++j) d.push_back({j, j});
        return triangle_lattice(-(nn - 1), nn - 1, true, o, d);
    }
    // 2n diagonal vertices; origins start one step below center.
    for (int i = 0; i < nn; ++i) o.push_back({-1 - i, -1 - i});
    for (int j = 0; j < nn; ++j) d.push_back({j, j});
    return triangle_lattice(-nn, nn - 1, true, o, d);
}

WeightedDag grid_catalan(std::size_t n, bool shifted) {
    if (n == 0) throw DimensionError("grid_catalan: n must be >= 1");
    const int nn = static_cast<int>(n);
    std::vector<std::pair<int, int>> o, d;
    if (!shifted) {
        for (int i = 0; i < nn; ++i) o.push_back({-i, -i});
        for (int j = 0; j < nn; ++j) d.push_back({j, j});
        return triangle_lattice(-(nn - 1), nn - 1, false, o, d);
    }
    for (int i = 0; i < nn; ++i) o.push_back({-1 - i, -1 - i});
    for (int j = 0; j < nn; ++j) d.push_back({j, j});
    return triangle_lattice(-nn, nn - 1, false, o, d);
}

WeightedDag two_taxis_preset() {
    return grid_rectangle(5, 3, {{1, 1}, {1, 2}}, {{5, 3}, {3, 3}});
}

WeightedDag catalan_minor_preset() {
    // n = 5 Catalan configuration with o_1 and d_2 removed.
    return triangle_lattice(-4, 4, false, {{0, 0}, {-2, -2}, {-3, -3}, {-4, -4}},
                            {{0, 0}, {1, 1}, {3, 3}, {4, 4}});
}

namespace {

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t k = c.size();
    for (std::size_t i = k; i-- > 0;) {
        if (c[i] < n - (k - i)) {
            ++c[i];
            for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

bool is_hankel(const ExactMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j + 1 < m.cols(); ++j)
            if (i + 1 < m.rows() && m.at(i, j + 1) != m.at(i + 1, j)) return false;
    return true;
}

bool positive_definite(const ExactMatrix& m) {
    for (std::size_t k = 1; k <= m.rows(); ++k) {
        std::vector<std::size_t> lead(k);
        std::iota(lead.begin(), lead.end(), 0);
        if (m.minor(lead, lead).sign() <= 0) return false;
    }
    return true;
}

bool positive_semidefinite(const ExactMatrix& m) {
    const std::size_t n = m.rows();
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            if (m.minor(idx, idx).sign() < 0) return false;
        } while (next_combination(idx, n));
    }
    return true;
}

}  // namespace

PositivityVerdict total_positivity(const ExactMatrix& m, PositivityMode mode) {
    if (!m.square()) throw DimensionError("total_positivity: matrix not square");
    const std::size_t n = m.rows();
    PositivityVerdict v{true, true, std::nullopt};

    if (mode == PositivityMode::AllMinors) {
        for (std::size_t k = 1; k <= n; ++k) {
            std::vector<std::size_t> rows(k);
            std::iota(rows.begin(), rows.end(), 0);
            do {
                std::vector<std::size_t> cols(k);
                std::iota(cols.begin(), cols.end(), 0);
                do {
                    int s = m.minor(rows, cols).sign();
                    if (s <= 0 && v.totally_positive) {
                        v.totally_positive = false;
                        v.witness = std::make_pair(rows, cols);
                    }
                    if (s < 0) {
                        v.totally_nonnegative = false;
                        v.witness = std::make_pair(rows, cols);
                        return v;
                    }
                } while (next_combination(cols, n));
            } while (next_combination(rows, n));
        }
        return v;
    }

    if (!is_hankel(m))
        throw StructureError("total_positivity: PinkusHankel mode requires a Hankel matrix");
    ExactMatrix lower_left = n > 1
        ? [&] {
              std::vector<std::size_t> rs(n - 1), cs(n - 1);
              std::iota(rs.begin(), rs.end(), 1);   // drop top row
              std::iota(cs.begin(), cs.end(), 0);   // drop rightmost column
              return m.submatrix(rs, cs);
          }()
        : ExactMatrix(0, 0);
    v.totally_positive =
        positive_definite(m) && (n == 1 || positive_definite(lower_left));
    v.totally_nonnegative =
        v.totally_positive ||
        (positive_semidefinite(m) && (n == 1 || positive_semidefinite(lower_left)));
    return v;
}

// ---------------------------------------------------------------------------
// Planar network extraction.
//
// Staircase topology: n levels by 2n columns, origins on the west rim,
// destinations on the east rim. Horizontal edges everywhere; the central
// column edge of each level carries its own weight. Descending diagonals fill
// the left half, ascending ones mirror them on the right. Unknowns are solved
// in groups: level-g central weight from a[g][g], then the right staircase of
// group g from a[g][g+k], then the left staircase from a[g+k][g].
// ---------------------------------------------------------------------------

namespace {

struct NetworkShape {
    std::size_t n;
    int vertex_count;
    std::vector<WeightedDag::Edge> edges;  // weights filled during solve
    std::vector<int> origins, dests;
    // edge indices of the unknowns
    std::vector<int> central;                       // per level
    std::vector<std::vector<int>> left, right;      // per group, step k-1

    int id(std::size_t level, std::size_t col) const {
        return static_cast<int>(level * (2 * n) + col);
    }
};

NetworkShape make_shape(std::size_t n) {
    NetworkShape s;
    s.n = n;
    s.vertex_count = static_cast<int>(n * 2 * n);
    s.central.resize(n, -1);
    s.left.resize(n);
    s.right.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c + 1 < 2 * n; ++c) {
            s.edges.push_back({s.id(r, c), s.id(r, c + 1), Rational(1), 1});
            if (c == n - 1) s.central[r] = static_cast<int>(s.edges.size() - 1);
        }
        s.origins.push_back(s.id(r, 0));
        s.dests.push_back(s.id(r, 2 * n - 1));
    }
    for (std::size_t g = 0; g + 1 < n; ++g) {
        for (std::size_t k = 1; k <= n - 1 - g; ++k) {
            // descent: level g+k at column n-1-k down to level g+k-1
            s.edges.push_back({s.id(g + k, n - 1 - k), s.id(g + k - 1, n - k), Rational(0), 1});
            s.left[g].push_back(static_cast<int>(s.edges.size() - 1));
            // ascent (mirror): level g+k-1 at column n-1+k up to level g+k
            s.edges.push_back({s.id(g + k - 1, n - 1 + k), s.id(g + k, n + k), Rational(0), 1});
            s.right[g].push_back(static_cast<int>(s.edges.size() - 1));
        }
    }
    return s;
}

// Weighted path sum west rim -> east rim with the current weight assignment.
Rational shape_path_sum(const NetworkShape& s, std::size_t oi, std::size_t dj) {
    std::vector<Rational> ways(s.vertex_count);
    ways[s.origins[oi]] = Rational(1);
    // columns increase along every edge, so column-major order is topological
    std::vector<std::vector<int>> starts(2 * s.n);
    for (std::size_t e = 0; e < s.edges.size(); ++e)
        starts[s.edges[e].src % (2 * s.n)].push_back(static_cast<int>(e));
    for (std::size_t c = 0; c + 1 < 2 * s.n; ++c)
        for (int e : starts[c]) {
            const auto& ed = s.edges[e];
            if (!ways[ed.src].is_zero() && !ed.weight.is_zero())
                ways[ed.dst] += ways[ed.src] * ed.weight;
        }
    return ways[s.dests[dj]];
}

}  // namespace

PlanarNetwork planar_network_weights(const ExactMatrix& m) {
    if (!m.square() || m.rows() == 0)
        throw DimensionError("planar_network_weights: need a nonempty square matrix");
    PositivityVerdict v = total_positivity(m, PositivityMode::AllMinors);
    if (!v.totally_nonnegative)
        throw std::domain_error("planar_network_weights: matrix is not totally nonnegative");

    const std::size_t n = m.rows();
    NetworkShape s = make_shape(n);

    auto solve_unknown = [&](int edge_idx, std::size_t row, std::size_t col) {
        Rational& w = s.edges[edge_idx].weight;
        w = Rational(0);
        Rational s0 = shape_path_sum(s, row, col);
        w = Rational(1);
        Rational s1 = shape_path_sum(s, row, col) - s0;
        w = Rational(2);
        Rational s2 = shape_path_sum(s, row, col) - s0;
        if (s2 != Rational(2) * s1)
            throw std::logic_error("planar_network_weights: unknown enters nonlinearly");
        if (s1.is_zero()) {
            if (m.at(row, col) != s0)
                throw std::domain_error("planar_network_weights: inconsistent dead branch");
            w = Rational(0);
            return;
        }
        w = (m.at(row, col) - s0) / s1;
        if (w.sign() < 0)
            throw std::domain_error("planar_network_weights: negative weight forced");
    };

    for (std::size_t g = 0; g < n; ++g) {
        solve_unknown(s.central[g], g, g);
        for (std::size_t k = 1; k <= n - 1 - g; ++k) solve_unknown(s.right[g][k - 1], g, g + k);
        for (std::size_t k = 1; k <= n - 1 - g; ++k) solve_unknown(s.left[g][k - 1], g + k, g);
    }

    PlanarNetwork out{
        WeightedDag(s.vertex_count, s.edges, s.origins, s.dests), {}, {}, {}};
    for (std::size_t r = 0; r < n; ++r) out.central.push_back(s.edges[s.central[r]].weight);
    out.left.resize(n);
    out.right.resize(n);
    for (std::size_t g = 0; g < n; ++g) {
        for (int e : s.left[g]) out.left[g].push_back(s.edges[e].weight);
        for (int e : s.right[g]) out.right[g].push_back(s.edges[e].weight);
    }
    if (path_matrix(out.dag) != m)
        throw std::logic_error("planar_network_weights: reconstruction mismatch");
    return out;
}

}  // namespace halfspace
