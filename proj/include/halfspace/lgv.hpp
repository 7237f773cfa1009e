#ifndef HALFSPACE_LGV_HPP
#define HALFSPACE_LGV_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "halfspace/exact_matrix.hpp"

namespace halfspace {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Directed acyclic graph with rational edge weights. Parallel edges are
/// modeled by a multiplicity count so vertex-disjointness semantics stay
/// unchanged when a figure doubles an edge.
class WeightedDag {
  public:
    struct Edge {
        int src;
        int dst;
        Rational weight;
        int multiplicity;
    };

    WeightedDag(int vertex_count, std::vector<Edge> edges, std::vector<int> origins,
                std::vector<int> destinations);

    int vertex_count() const { return vertex_count_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& origins() const { return origins_; }
    const std::vector<int>& destinations() const { return destinations_; }
    const std::vector<int>& topological_order() const { return topo_; }

    /// Outgoing edge indices per vertex.
    const std::vector<std::vector<int>>& adjacency() const { return adj_; }

    std::string to_json() const;
    static WeightedDag from_json(const std::string& text);

  private:
    int vertex_count_;
    std::vector<Edge> edges_;
    std::vector<int> origins_, destinations_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> topo_;  // established at construction; rejects cycles
};

/// Weighted path sum from o to d: sum over paths of prod(weight*multiplicity).
/// With unit weights this is the path count. 1 when o == d, 0 if unreachable.
Rational count_paths(const WeightedDag& g, int o, int d);

/// A[i][j] = count_paths(origins[i], destinations[j]).
ExactMatrix path_matrix(const WeightedDag& g);

struct LgvResult {
    Rational determinant;       // det of path_matrix
    Rational enumerated;        // signed non-intersecting count, brute force
    bool non_permutable;        // every non-identity pairing contributed zero
    Rational identity_count;    // the sigma = id contribution alone
};

/// Brute-force signed enumeration of vertex-disjoint path systems over all
/// pairings. Guarded: throws ResourceError when some origin/destination pair
/// admits more than `path_bound` paths.
LgvResult enumerate_nonintersecting(const WeightedDag& g, long path_bound = 2000);

/// det(path_matrix) next to the brute-force count; equality is the LGV claim.
LgvResult lgv_check(const WeightedDag& g, long path_bound = 2000);

/// Rectangular taxi grid [0..ew] x [0..ns], all edges north and east.
WeightedDag grid_rectangle(int ew, int ns, std::vector<std::pair<int, int>> origins,
                           std::vector<std::pair<int, int>> destinations);

/// Triangular lattice with doubled north edges off the main diagonal;
/// origins/destinations arranged from the center per the binomial family.
/// path_matrix = B(n) (unshifted) or B'(n) (shifted).
WeightedDag grid_binomial(std::size_t n, bool shifted = false);

/// Staircase triangle (Dyck-path domain); path_matrix = C(n) or C'(n).
WeightedDag grid_catalan(std::size_t n, bool shifted);

/// The two-taxi configuration whose non-intersecting count is 15.
WeightedDag two_taxis_preset();

/// The n = 5 Catalan configuration with {o_1, d_2} deleted; its
/// non-intersecting count 183 is |C(5)^-1_{2,1}| by Cramer.
WeightedDag catalan_minor_preset();

enum class PositivityMode { AllMinors, PinkusHankel };

struct PositivityVerdict {
    bool totally_positive;
    bool totally_nonnegative;
    // first offending minor when not TP (row set, col set), for diagnostics
    std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> witness;
};

/// AllMinors checks every square minor; PinkusHankel checks positive
/// definiteness of the matrix and of its lower-left submatrix (requires
/// Hankel structure, else StructureError) and certifies total positivity.
PositivityVerdict total_positivity(const ExactMatrix& m, PositivityMode mode);

/// Planar network extraction for a totally nonnegative matrix: staircase
/// topology whose weighted path matrix reproduces the input exactly.
struct PlanarNetwork {
    WeightedDag dag;
    std::vector<Rational> central;             // per level 0..n-1
    std::vector<std::vector<Rational>> left;   // per group, step k = 1..n-1-g
    std::vector<std::vector<Rational>> right;  // per group, step k = 1..n-1-g
};

PlanarNetwork planar_network_weights(const ExactMatrix& m);

}  // namespace halfspace

#endif
