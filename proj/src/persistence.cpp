#include "svtnet/persistence.hpp"

#include <algorithm>
#include <cstdint>
#include <queue>
#include <stdexcept>
#include <unordered_map>

namespace svtnet {

namespace {

struct EdgeRec {
    double diam;
    int i, j;  // i < j
};

// filtration order on edges: ascending diameter, lexicographic tie-break
inline bool edge_less(const EdgeRec& a, const EdgeRec& b) {
    if (a.diam != b.diam) return a.diam < b.diam;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // elder rule with all births at 0: the smaller root survives
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

struct TriangleEntry {
    double diam;
    std::int64_t key;  // (i*n + j)*n + k with i < j < k
};

struct TriangleGreater {
    bool operator()(const TriangleEntry& a, const TriangleEntry& b) const {
        if (a.diam != b.diam) return a.diam > b.diam;
        return a.key > b.key;
    }
};

using ColumnHeap =
    std::priority_queue<TriangleEntry, std::vector<TriangleEntry>, TriangleGreater>;

class RipsH1 {
public:
    RipsH1(const Eigen::MatrixXd& d, const std::vector<EdgeRec>& edges,
           const std::vector<char>& negative)
        : d_(d), n_(static_cast<int>(d.rows())) {
        // Enclosing radius: at scale min_i max_j d(i,j) the complex is a
        // cone over the minimizing point, hence contractible. No 1-cycle is
        // born there or later (anything created dies at the same scale), so
        // columns of edges at or beyond it reduce to nothing and are skipped.
        double enclosing = kInfiniteDeath;
        for (int i = 0; i < n_; ++i) {
            double row_max = 0.0;
            for (int j = 0; j < n_; ++j) row_max = std::max(row_max, d(i, j));
            enclosing = std::min(enclosing, row_max);
        }
        columns_.reserve(edges.size());
        for (size_t e = 0; e < edges.size(); ++e) {
            if (!negative[e] && edges[e].diam < enclosing) columns_.push_back(edges[e]);
        }
        // cohomology processes columns in reverse filtration order
        std::sort(columns_.begin(), columns_.end(),
                  [](const EdgeRec& a, const EdgeRec& b) { return edge_less(b, a); });
    }

    std::vector<PersistencePair> run() {
        std::vector<PersistencePair> pairs;
        for (const EdgeRec& e : columns_) {
            if (try_apparent_pair(e)) continue;
            reduce_column(e, pairs);
        }
        return pairs;
    }

private:
    TriangleEntry cofacet(int i, int j, double diam_ij, int k) const {
        double diam = std::max({diam_ij, d_(i, k), d_(j, k)});
        int a = i, b = j, c = k;
        if (c < b) std::swap(b, c);
        if (b < a) std::swap(a, b);
        return TriangleEntry{diam, (static_cast<std::int64_t>(a) * n_ + b) * n_ + c};
    }

    void push_cofacets(const EdgeRec& e, ColumnHeap& heap) const {
        for (int k = 0; k < n_; ++k) {
            if (k == e.i || k == e.j) continue;
            heap.push(cofacet(e.i, e.j, e.diam, k));
        }
    }

    // maximal facet (in edge filtration order) of the triangle given by key
    EdgeRec max_facet(std::int64_t key) const {
        int c = static_cast<int>(key % n_);
        key /= n_;
        int b = static_cast<int>(key % n_);
        int a = static_cast<int>(key / n_);
        EdgeRec f1{d_(a, b), a, b}, f2{d_(a, c), a, c}, f3{d_(b, c), b, c};
        EdgeRec best = f1;
        if (edge_less(best, f2)) best = f2;
        if (edge_less(best, f3)) best = f3;
        return best;
    }

    // A stored reduced column: either a bare edge whose coboundary is
    // expanded on demand (apparent pairs, never reduced) or the explicit
    // cancelled triangle list of a finished reduction, pivot included.
    struct OwnerColumn {
        EdgeRec edge{};
        bool is_edge = false;
        std::vector<TriangleEntry> tris;
    };

    bool try_apparent_pair(const EdgeRec& e) {
        bool found = false;
        TriangleEntry t0{};
        for (int k = 0; k < n_; ++k) {
            if (k == e.i || k == e.j) continue;
            TriangleEntry t = cofacet(e.i, e.j, e.diam, k);
            if (!found || t.diam < t0.diam || (t.diam == t0.diam && t.key < t0.key)) {
                t0 = t;
                found = true;
            }
        }
        if (!found || t0.diam != e.diam) return false;
        if (pivot_owner_.count(t0.key)) return false;
        EdgeRec mf = max_facet(t0.key);
        if (mf.i != e.i || mf.j != e.j) return false;
        OwnerColumn col;
        col.edge = e;
        col.is_edge = true;
        pivot_owner_.emplace(t0.key, std::move(col));
        return true;  // zero-persistence pair, not emitted
    }

    // pops entries with pairwise Z2 cancellation; false when the column is empty
    static bool pop_pivot(ColumnHeap& heap, TriangleEntry& pivot) {
        while (!heap.empty()) {
            TriangleEntry top = heap.top();
            heap.pop();
            size_t count = 1;
            while (!heap.empty() && heap.top().key == top.key) {
                heap.pop();
                ++count;
            }
            if (count % 2 == 1) {
                pivot = top;
                return true;
            }
        }
        return false;
    }

    void reduce_column(const EdgeRec& e, std::vector<PersistencePair>& pairs) {
        ColumnHeap heap;
        push_cofacets(e, heap);
        TriangleEntry pivot{};
        while (true) {
            if (!pop_pivot(heap, pivot)) {
                // an essential one-dimensional class; cannot occur once the
                // filtration reaches the full 2-skeleton, kept for safety
                pairs.push_back(PersistencePair{e.diam, kInfiniteDeath});
                return;
            }
            auto it = pivot_owner_.find(pivot.key);
            if (it == pivot_owner_.end()) {
                // store the cancelled reduced column (pivot first, then the
                // surviving tail of the working heap) for later additions
                OwnerColumn col;
                col.tris.push_back(pivot);
                TriangleEntry rest{};
                while (pop_pivot(heap, rest)) col.tris.push_back(rest);
                pivot_owner_.emplace(pivot.key, std::move(col));
                if (pivot.diam > e.diam) {
                    pairs.push_back(PersistencePair{e.diam, pivot.diam});
                }
                return;
            }
            heap.push(pivot);  // reinsert; the owner's copy cancels it
            const OwnerColumn& col = it->second;
            if (col.is_edge) {
                push_cofacets(col.edge, heap);
            } else {
                for (const TriangleEntry& t : col.tris) heap.push(t);
            }
        }
    }

    const Eigen::MatrixXd& d_;
    int n_;
    std::vector<EdgeRec> columns_;
    std::unordered_map<std::int64_t, OwnerColumn> pivot_owner_;
};

}  // namespace

std::vector<Diagram2D> rips_persistence(const DistanceMatrix& dm, int max_dim) {
    if (max_dim < 0 || max_dim > 1) {
        throw std::invalid_argument("rips_persistence supports hole dimensions 0 and 1");
    }
    const int n = dm.size();
    if (n < 1) {
        throw std::invalid_argument("empty distance matrix");
    }

    std::vector<EdgeRec> edges;
    edges.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            edges.push_back(EdgeRec{dm.d(i, j), i, j});
        }
    }
    std::vector<size_t> order(edges.size());
    for (size_t e = 0; e < edges.size(); ++e) order[e] = e;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return edge_less(edges[a], edges[b]);
    });

    // dimension 0: single linkage; union edges are the negative edges,
    // cleared from the dimension-1 coboundary reduction
    Diagram2D h0;
    h0.tau = dm.tau;
    h0.dim = 0;
    UnionFind uf(n);
    std::vector<char> negative(edges.size(), 0);
    for (size_t idx : order) {
        if (uf.unite(edges[idx].i, edges[idx].j)) {
            negative[idx] = 1;
            if (edges[idx].diam > 0.0) {
                h0.pairs.push_back(PersistencePair{0.0, edges[idx].diam});
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (uf.find(i) == i) h0.pairs.push_back(PersistencePair{0.0, kInfiniteDeath});
    }

    std::vector<Diagram2D> out{h0};
    if (max_dim >= 1) {
        Diagram2D h1;
        h1.tau = dm.tau;
        h1.dim = 1;
        if (n >= 3) {
            h1.pairs = RipsH1(dm.d, edges, negative).run();
        }
        out.push_back(std::move(h1));
    }
    return out;
}

Diagram3D scale_variant_diagram(const SpectralDecomposition& sd,
                                const std::vector<double>& tau_grid, int dim) {
    if (tau_grid.empty()) {
        throw std::invalid_argument("timescale grid is empty");
    }
    for (size_t i = 0; i < tau_grid.size(); ++i) {
        if (!(tau_grid[i] > 0.0) || (i > 0 && tau_grid[i] <= tau_grid[i - 1])) {
            throw std::invalid_argument("timescale grid must be strictly increasing and positive");
        }
    }
    Diagram3D out;
    out.dim = dim;
    out.tau_grid = tau_grid;
    for (double tau : tau_grid) {
        DistanceMatrix dm = distance_matrix(point_cloud(sd, tau));
        auto diags = rips_persistence(dm, dim);
        const double max_dist = dm.d.maxCoeff();
        for (const auto& p : diags[dim].pairs) {
            DiagramPoint q;
            q.birth = p.birth;
            q.tau = tau;
            if (std::isinf(p.death)) {
                q.death = max_dist;
                q.essential = true;
            } else {
                q.death = p.death;
            }
            if (q.birth == q.death) continue;
            out.points.push_back(q);
        }
    }
    return out;
}

Diagram3D scale_variant_diagram(const RandomWalkLaplacian& lap,
                                const std::vector<double>& tau_grid, int dim) {
    return scale_variant_diagram(spectral_decompose(lap), tau_grid, dim);
}

Diagram3D restrict_diagram(const Diagram3D& d, double tau_max) {
    Diagram3D out;
    out.dim = d.dim;
    for (double t : d.tau_grid) {
        if (t <= tau_max) out.tau_grid.push_back(t);
    }
    for (const auto& p : d.points) {
        if (p.tau <= tau_max) out.points.push_back(p);
    }
    return out;
}

}  // namespace svtnet
