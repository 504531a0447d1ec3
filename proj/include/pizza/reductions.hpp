#pragma once

#include "pizza/geometry.hpp"
#include "pizza/sc_path.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pizza {

enum class ValuationKind { KBlock, TwoBlockUniform, BlockPlusTriangle };

struct CHBlock {
    Q left, right, density;
};

struct CHTriangle {
    Q left, right;  // right = left + 1; cumulative value (x - left)^2
};

struct CHValuation {
    ValuationKind kind = ValuationKind::KBlock;
    std::vector<CHBlock> blocks;
    std::optional<CHTriangle> triangle;
};

struct CHInstance {
    std::vector<CHValuation> agents;
    Q domain_lo = 0, domain_hi = 1;
};

struct CHSolution {
    std::vector<Q> cuts;
    int first_label = +1;  // +1 or -1; labels alternate across cuts
};

struct StraightLine {
    Q a, b, c;  // a*x + b*y = c, positive side a*x + b*y > c
};
using StraightCutSet = std::vector<StraightLine>;

enum class ReductionKind { Overlapping, Checkerboard, Straight, Exact };

// One interval of interest and the axis-aligned square (or block) that encodes it, in normalized coordinates.
struct CellRecord {
    int index = 0;  // j, 1-based
    Q x_lo, x_hi;   // the interval [x_j, x_{j+1}]
    Q X0, Y0, X1, Y1;
};

struct TileRecord {
    int index = 0;  // d-block j, 1-based; tile bottom-left (j, j^2) before normalization
    Q x_lo, x_hi;   // the d-block [(j-1)d, j d]
};

struct ReductionMeta {
    ReductionKind kind = ReductionKind::Overlapping;
    int agents = 0;
    std::vector<Q> points_of_interest;
    std::vector<CellRecord> cells;
    std::vector<TileRecord> tiles;
    Transform transform;  // raw construction coordinates -> instance coordinates
    Q weight_factor = 1;  // every density was multiplied by this to undo the area scaling
    Q eps_in = 0, eps_out = 0;
    Q d = 0;              // straight: d-block width
    int delta = 0;        // straight: extra halvings of d
    Q c_max = 0;          // checkerboard
    std::vector<int> granularity;  // checkerboard: t_j per cell
    Q gadget_weight = 0;  // exact: density of the triangle gadget before weight_factor
    Q domain_lo = 0, domain_hi = 1;
    bool snapped = false;  // approximate mode rounded some side lengths
};

struct ReductionOptions {
    bool exact = true;         // reject irrational side lengths instead of rounding them
    unsigned snap_bits = 24;   // dyadic precision when rounding
    int granularity = 0;       // checkerboard t_j override; 0 picks sqrt(n * width) when integral, else 1
};

class ReductionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const char* kind_name(ReductionKind k);
ReductionKind parse_reduction_kind(const std::string& s);
const char* valuation_kind_name(ValuationKind k);
ValuationKind parse_valuation_kind(const std::string& s);

void validate_ch(const CHInstance& ch);
Q agent_value(const CHValuation& v, const Q& lo, const Q& hi);
Q agent_total(const CHValuation& v);
// Density of the agent's blocks on an interval that contains no point of interest in its interior.
Q block_density_on(const CHValuation& v, const Q& lo, const Q& hi);

std::vector<Q> points_of_interest(const CHInstance& ch);

std::pair<PizzaInstance, ReductionMeta> reduce_overlapping(const CHInstance& ch);
std::pair<PizzaInstance, ReductionMeta> reduce_checkerboard(const CHInstance& ch, const Q& eps,
                                                            const ReductionOptions& opt = {});
std::pair<PizzaInstance, ReductionMeta> reduce_straight(const CHInstance& ch, const Q& eps, int delta,
                                                        const ReductionOptions& opt = {});
std::pair<PizzaInstance, ReductionMeta> reduce_exact(const CHInstance& ch);

CHSolution path_to_ch_cuts(const ReductionMeta& meta, const FeasibleSolution& sol);

struct LineRotation {
    StraightLine before, after;
    bool rotated = false;
    int tiles_crossed = 0;  // tiles whose interior the original line meets
};

LineRotation rotate_off_tiles(const ReductionMeta& meta, const StraightLine& line);
CHSolution lines_to_ch_cuts(const ReductionMeta& meta, const StraightCutSet& lines,
                            std::vector<LineRotation>* rotations = nullptr);
// Vertical lines between consecutive tiles realising the given CH cuts (cuts on the d-grid).
StraightCutSet lines_for_cuts(const ReductionMeta& meta, const std::vector<Q>& cuts, int first_label = +1);

struct VerifyReport {
    bool pass = false;
    std::vector<Q> plus, minus, gaps;
    Q max_gap = 0;
    std::vector<std::string> warnings;
};

VerifyReport verify_ch(const CHInstance& ch, const CHSolution& sol, const Q& eps);
VerifyReport verify_straight(const PizzaInstance& inst, const StraightCutSet& lines, const Q& eps,
                             std::size_t budget = 0);
// A negative turn budget skips the turn check; with an exact-reduction meta, turns strictly inside a gadget square are flagged.
VerifyReport verify_scpath(const PizzaInstance& inst, const FeasibleSolution& sol, const Q& eps, int turn_budget = -1,
                           const ReductionMeta* meta = nullptr);
// Exact per-color mass of the even-parity region R+ of a line arrangement.
std::vector<Q> parity_plus_mass(const PizzaInstance& inst, const StraightCutSet& lines);
// Maps a line given in instance coordinates back to the raw tile coordinates of a straight reduction.
StraightLine to_raw(const ReductionMeta& meta, const StraightLine& line);
StraightLine from_raw(const ReductionMeta& meta, const StraightLine& line);
// Number of tiles whose interior the line (raw coordinates) meets.
int tiles_crossed(const ReductionMeta& meta, const StraightLine& raw);

// Side of q + t*(dx, dy) for all small enough t > 0.
Side side_near(const FeasibleSolution& sol, const Point2& q, int dx, int dy);

}  // namespace pizza
