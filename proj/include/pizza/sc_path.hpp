#pragma once

#include "pizza/geometry.hpp"

#include <vector>

namespace pizza {

// Coordinates laid out as Z_1..Z_s, R, X_1..X_{k+1-s}; the L1 norm equals k+1.
template <class T>
struct SpherePointT {
    std::vector<T> coords;
    int turns = 0;  // k

    T radius() const { return T(turns + 1); }
};
using SpherePoint = SpherePointT<Q>;

inline int horizontal_cuts(int k) { return (k + 2) / 2; }        // s = ceil((k+1)/2)
inline int vertical_cuts(int k) { return k + 1 - horizontal_cuts(k); }
inline int sphere_dimension(int k) { return k + 2; }
inline int turns_for_dimension(int dim) { return dim - 2; }

// Signed slice thicknesses z_1..z_{s+1} and cut abscissae x_1..x_{k+1-s}.
template <class T>
struct FeasibleSolutionT {
    std::vector<T> z;
    std::vector<T> x;
    std::vector<int> x_sign;  // decoded from X_i, carries no geometric meaning
    int turns = 0;
};
using FeasibleSolution = FeasibleSolutionT<Q>;

// One horizontal band of the square; `cut` is the x splitting it (1 when uncut).
template <class T>
struct Strip {
    T y_lo, y_hi, cut;
    int sign = 0;  // side A is x < cut when +, x > cut when -
    bool has_cut = false;
    int index = 0;  // 1-based slice number
};

enum class Side { A, B, Boundary };

template <class T>
struct PathSegmentT {
    T x0, y0, x1, y1;
    bool horizontal = false;
    bool wraps = false;  // crosses the x=0 / x=1 seam
    int dir = 0;         // +1 right/up, -1 left
};

template <class T>
struct SCPathT {
    std::vector<PathSegmentT<T>> segments;
};
using SCPath = SCPathT<Q>;

enum class Move { Right, Left, Up };

template <class T> SpherePointT<T> antipode(const SpherePointT<T>& p);
template <class T> T l1_norm(const SpherePointT<T>& p);
// Sign of R; when R = 0 the first nonzero coordinate decides, so that p and -p always disagree.
template <class T> int top_slice_sign(const SpherePointT<T>& p);
template <class T> FeasibleSolutionT<T> sphere_to_solution(const SpherePointT<T>& p);
template <class T> std::vector<Strip<T>> strips_of(const FeasibleSolutionT<T>& sol);
template <class T> SCPathT<T> solution_to_path(const FeasibleSolutionT<T>& sol);
template <class T> std::vector<Move> turn_moves(const FeasibleSolutionT<T>& sol);
template <class T> bool path_start(const FeasibleSolutionT<T>& sol, T& x, T& y);

Side point_side(const FeasibleSolution& sol, const Point2& q);
int turn_count(const SCPath& path);
bool is_y_monotone(const SCPath& path);
// Vertices of the path in order; wraps[i] flags the segment from vertex i to i+1.
void path_polyline(const SCPath& path, std::vector<Point2>& pts, std::vector<bool>& wraps);

SpherePoint make_sphere_point(const std::vector<Q>& coords);
FeasibleSolutionT<double> to_double(const FeasibleSolution& sol);

}  // namespace pizza
