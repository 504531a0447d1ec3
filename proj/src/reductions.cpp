#include "pizza/reductions.hpp"

#include "pizza/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace pizza {

const char* kind_name(ReductionKind k) {
    switch (k) {
        case ReductionKind::Overlapping: return "overlapping";
        case ReductionKind::Checkerboard: return "checkerboard";
        case ReductionKind::Straight: return "straight";
        case ReductionKind::Exact: return "exact";
    }
    return "?";
}

ReductionKind parse_reduction_kind(const std::string& s) {
    if (s == "overlapping") return ReductionKind::Overlapping;
    if (s == "checkerboard") return ReductionKind::Checkerboard;
    if (s == "straight") return ReductionKind::Straight;
    if (s == "exact") return ReductionKind::Exact;
    throw ReductionError("unknown reduction '" + s + "'");
}

const char* valuation_kind_name(ValuationKind k) {
    switch (k) {
        case ValuationKind::KBlock: return "kBlock";
        case ValuationKind::TwoBlockUniform: return "twoBlockUniform";
        case ValuationKind::BlockPlusTriangle: return "blockPlusTriangle";
    }
    return "?";
}

ValuationKind parse_valuation_kind(const std::string& s) {
    if (s == "kBlock") return ValuationKind::KBlock;
    if (s == "twoBlockUniform") return ValuationKind::TwoBlockUniform;
    if (s == "blockPlusTriangle") return ValuationKind::BlockPlusTriangle;
    throw ReductionError("unknown valuation kind '" + s + "'");
}

namespace {

Q triangle_cdf(const CHTriangle& t, const Q& x) {
    if (x <= t.left) return 0;
    if (x >= t.right) return 1;
    Q u = x - t.left;
    return u * u;
}

std::string agent_tag(std::size_t i) { return "agent " + std::to_string(i) + ": "; }

}  // namespace

Q agent_value(const CHValuation& v, const Q& lo, const Q& hi) {
    Q total = 0;
    for (const auto& b : v.blocks) {
        Q l = max(lo, b.left), r = min(hi, b.right);
        if (l < r) total += b.density * (r - l);
    }
    if (v.triangle) total += triangle_cdf(*v.triangle, hi) - triangle_cdf(*v.triangle, lo);
    return total;
}

Q agent_total(const CHValuation& v) {
    Q total = 0;
    for (const auto& b : v.blocks) total += b.density * (b.right - b.left);
    if (v.triangle) total += 1;
    return total;
}

Q block_density_on(const CHValuation& v, const Q& lo, const Q& hi) {
    Q c = 0;
    for (const auto& b : v.blocks) {
        if (b.left <= lo && hi <= b.right) c += b.density;
        else if (b.left < hi && lo < b.right) throw ReductionError("block straddles an interval of interest");
    }
    return c;
}

void validate_ch(const CHInstance& ch) {
    if (ch.agents.empty()) throw ReductionError("consensus-halving instance has no agents");
    if (!(ch.domain_lo < ch.domain_hi)) throw ReductionError("empty domain");
    for (std::size_t i = 0; i < ch.agents.size(); ++i) {
        const auto& v = ch.agents[i];
        auto blocks = v.blocks;
        std::sort(blocks.begin(), blocks.end(), [](const CHBlock& a, const CHBlock& b) { return a.left < b.left; });
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            const auto& b = blocks[j];
            if (!(b.left < b.right)) throw ReductionError(agent_tag(i) + "block with empty interior");
            if (b.density <= Q(0)) throw ReductionError(agent_tag(i) + "block density must be positive");
            if (b.left < ch.domain_lo || b.right > ch.domain_hi) throw ReductionError(agent_tag(i) + "block outside the domain");
            if (j > 0 && blocks[j - 1].right > b.left) throw ReductionError(agent_tag(i) + "overlapping blocks");
        }
        switch (v.kind) {
            case ValuationKind::TwoBlockUniform:
                if (blocks.size() > 2) throw ReductionError(agent_tag(i) + "twoBlockUniform allows at most two blocks");
                if (blocks.size() == 2 && blocks[0].density != blocks[1].density)
                    throw ReductionError(agent_tag(i) + "twoBlockUniform blocks must share a density");
                [[fallthrough]];
            case ValuationKind::KBlock:
                if (blocks.empty()) throw ReductionError(agent_tag(i) + "no blocks");
                if (v.triangle) throw ReductionError(agent_tag(i) + "triangle only allowed for blockPlusTriangle");
                if (agent_total(v) != Q(1)) throw ReductionError(agent_tag(i) + "total value must be 1");
                break;
            case ValuationKind::BlockPlusTriangle:
                if (!v.triangle) throw ReductionError(agent_tag(i) + "blockPlusTriangle needs a triangle");
                if (v.triangle->right - v.triangle->left != Q(1)) throw ReductionError(agent_tag(i) + "triangle must have unit width");
                if (v.triangle->left < ch.domain_lo || v.triangle->right > ch.domain_hi)
                    throw ReductionError(agent_tag(i) + "triangle outside the domain");
                break;
        }
    }
}

std::vector<Q> points_of_interest(const CHInstance& ch) {
    std::vector<Q> pts;
    for (const auto& v : ch.agents) {
        for (const auto& b : v.blocks) {
            pts.push_back(b.left);
            pts.push_back(b.right);
        }
        if (v.triangle) {
            pts.push_back(v.triangle->left);
            pts.push_back(v.triangle->right);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

namespace {

WeightedPolygon rect(const Q& x0, const Q& y0, const Q& x1, const Q& y1, const Q& w) {
    WeightedPolygon p;
    p.weight = w;
    p.outer = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    return p;
}

// Maps the raw bounding box [lo, hi]^2 onto the unit square and rescales densities so masses are unchanged.
PizzaInstance place(PizzaInstance raw, const Q& minx, const Q& miny, const Q& side, ReductionMeta& meta) {
    Transform tr;
    tr.shift_x = -minx;
    tr.shift_y = -miny;
    tr.scale = Q(1) / side;
    Q f = side * side;
    for (auto& m : raw.masses)
        for (auto& p : m.polygons) {
            p.weight *= f;
            for (auto& v : p.outer) v = tr.apply(v);
            for (auto& h : p.holes)
                for (auto& v : h) v = tr.apply(v);
        }
    raw.normalized = true;
    meta.transform = tr;
    meta.weight_factor = f;
    return raw;
}

void place_cells(ReductionMeta& meta) {
    for (auto& c : meta.cells) {
        Point2 a = meta.transform.apply({c.X0, c.Y0}), b = meta.transform.apply({c.X1, c.Y1});
        c.X0 = a.x; c.Y0 = a.y; c.X1 = b.x; c.Y1 = b.y;
    }
}

PizzaInstance empty_colors(std::size_t n) {
    PizzaInstance inst;
    for (std::size_t i = 0; i < n; ++i) inst.masses.push_back(MassDistribution{static_cast<int>(i), {}});
    return inst;
}

Q uniform_density(const CHValuation& v, std::size_t i) {
    if (v.triangle || v.blocks.empty()) throw ReductionError(agent_tag(i) + "expected a uniform block valuation");
    for (const auto& b : v.blocks)
        if (b.density != v.blocks.front().density) throw ReductionError(agent_tag(i) + "block densities differ");
    return v.blocks.front().density;
}

Q sqrt_or_snap(const Q& v, const ReductionOptions& opt, bool& snapped, const char* what) {
    Q r;
    if (exact_sqrt(v, r)) return r;
    if (opt.exact) throw ReductionError(std::string("exact mode: ") + what + " is not a rational square (" + v.str() + ")");
    snapped = true;
    return dyadic_floor(Q::from_double(std::sqrt(v.to_double())), opt.snap_bits);
}

std::pair<PizzaInstance, ReductionMeta> diagonal(const CHInstance& ch, bool with_triangles) {
    validate_ch(ch);
    ReductionMeta meta;
    meta.kind = with_triangles ? ReductionKind::Exact : ReductionKind::Overlapping;
    meta.agents = static_cast<int>(ch.agents.size());
    meta.domain_lo = ch.domain_lo;
    meta.domain_hi = ch.domain_hi;
    meta.points_of_interest = points_of_interest(ch);
    const auto& pts = meta.points_of_interest;
    if (pts.size() < 2) throw ReductionError("need at least two points of interest");
    const int m = static_cast<int>(pts.size());

    PizzaInstance raw = empty_colors(ch.agents.size());
    if (with_triangles) meta.gadget_weight = 2;
    for (int j = 1; j < m; ++j) {
        CellRecord cell{j, pts[j - 1], pts[j], Q(j), Q(j), Q(j + 1), Q(j + 1)};
        Q w = cell.x_hi - cell.x_lo;
        for (std::size_t i = 0; i < ch.agents.size(); ++i) {
            const auto& v = ch.agents[i];
            Q c = block_density_on(v, cell.x_lo, cell.x_hi);
            if (c > Q(0)) raw.masses[i].polygons.push_back(rect(Q(j), Q(j), Q(j + 1), Q(j + 1), c * w));
            if (v.triangle && v.triangle->left == cell.x_lo) {
                if (!with_triangles) throw ReductionError(agent_tag(i) + "triangle valuations need the exact reduction");
                if (v.triangle->right != cell.x_hi)
                    throw ReductionError(agent_tag(i) + "triangle interval must be exactly one interval of interest");
                WeightedPolygon t;
                t.weight = meta.gadget_weight;
                t.outer = {{Q(j), Q(j + 1)}, {Q(j + 1), Q(j)}, {Q(j + 1), Q(j + 1)}};
                raw.masses[i].polygons.push_back(t);
            }
        }
        meta.cells.push_back(cell);
    }
    for (std::size_t i = 0; i < ch.agents.size(); ++i)
        if (ch.agents[i].triangle && !with_triangles) throw ReductionError(agent_tag(i) + "triangle valuations need the exact reduction");
    auto inst = place(raw, Q(1), Q(1), Q(m - 1), meta);
    place_cells(meta);
    return {inst, meta};
}

}  // namespace

std::pair<PizzaInstance, ReductionMeta> reduce_overlapping(const CHInstance& ch) { return diagonal(ch, false); }

std::pair<PizzaInstance, ReductionMeta> reduce_exact(const CHInstance& ch) { return diagonal(ch, true); }

std::pair<PizzaInstance, ReductionMeta> reduce_checkerboard(const CHInstance& ch, const Q& eps, const ReductionOptions& opt) {
    validate_ch(ch);
    const std::size_t n = ch.agents.size();
    ReductionMeta meta;
    meta.kind = ReductionKind::Checkerboard;
    meta.agents = static_cast<int>(n);
    meta.eps_in = eps;
    meta.points_of_interest = points_of_interest(ch);
    const auto& pts = meta.points_of_interest;
    if (pts.size() < 2) throw ReductionError("need at least two points of interest");

    std::vector<Q> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = uniform_density(ch.agents[i], i);
        meta.c_max = max(meta.c_max, c[i]);
    }
    meta.eps_out = eps * Q(static_cast<long>(n)) / meta.c_max;

    PizzaInstance raw = empty_colors(n);
    Q z = 0;
    for (std::size_t jj = 1; jj < pts.size(); ++jj) {
        const int j = static_cast<int>(jj);
        Q w = pts[jj] - pts[jj - 1];
        Q y = sqrt_or_snap(w * meta.c_max, opt, meta.snapped, "block side");
        int t = opt.granularity;
        if (t <= 0) {
            Q r;
            t = 1;
            if (exact_sqrt(Q(static_cast<long>(n)) * w, r) && r.is_integer() && r >= Q(1)) t = static_cast<int>(r.to_double());
        }
        meta.granularity.push_back(t);
        const long grid = static_cast<long>(n) * t;
        const Q cell = y / Q(grid);
        for (std::size_t i = 0; i < n; ++i) {
            Q ci = block_density_on(ch.agents[i], pts[jj - 1], pts[jj]);
            if (ci.is_zero()) continue;
            Q side = sqrt_or_snap(w * ci, opt, meta.snapped, "square side") / Q(grid);
            side = min(side, cell);
            const long count = static_cast<long>(n) * t * t;
            Q weight = (w * ci) / (Q(count) * side * side);
            Q pad = (cell - side) / Q(2);
            for (long row = 0; row < grid; ++row)
                for (long col = 0; col < grid; ++col) {
                    if (static_cast<std::size_t>(((col - row) % static_cast<long>(n) + static_cast<long>(n)) % static_cast<long>(n)) != i)
                        continue;
                    Q x0 = z + Q(col) * cell + pad, y0 = z + Q(row) * cell + pad;
                    raw.masses[i].polygons.push_back(rect(x0, y0, x0 + side, y0 + side, weight));
                }
        }
        meta.cells.push_back(CellRecord{j, pts[jj - 1], pts[jj], z, z, z + y, z + y});
        z += y;
    }
    auto inst = place(raw, Q(0), Q(0), z, meta);
    place_cells(meta);
    return {inst, meta};
}

std::pair<PizzaInstance, ReductionMeta> reduce_straight(const CHInstance& ch, const Q& eps, int delta, const ReductionOptions& opt) {
    validate_ch(ch);
    if (ch.domain_lo != Q(0) || ch.domain_hi != Q(1)) throw ReductionError("straight reduction expects the domain [0,1]");
    if (eps <= Q(0)) throw ReductionError("epsilon must be positive");
    if (delta < 0) throw ReductionError("delta must be non-negative");
    const std::size_t n = ch.agents.size();
    ReductionMeta meta;
    meta.kind = ReductionKind::Straight;
    meta.agents = static_cast<int>(n);
    meta.eps_in = eps;
    meta.eps_out = eps;
    meta.delta = delta;
    meta.points_of_interest = points_of_interest(ch);

    std::vector<Q> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = uniform_density(ch.agents[i], i);

    mpz_class l = 1;
    for (const auto& p : meta.points_of_interest) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.denominator().get_mpz_t());
    Q g = Q(mpz_class(1)) / Q(l);
    Q eps2 = eps * eps;
    mpz_class refine = (g / eps2).numerator() / (g / eps2).denominator() + 1;
    Q d = g / Q(refine);
    for (int i = 0; i < delta; ++i) d /= Q(2);
    meta.d = d;
    Q count_q = Q(1) / d;
    if (!count_q.is_integer() || count_q > Q(1L << 16)) throw ReductionError("straight reduction would need " + count_q.str() + " tiles");
    const long T = static_cast<long>(count_q.to_double());

    PizzaInstance raw = empty_colors(n);
    std::vector<Q> side(n);
    std::vector<Q> weight(n);
    const Q inv_n = Q(1) / Q(static_cast<long>(n));
    for (std::size_t i = 0; i < n; ++i) {
        Q s = sqrt_or_snap(c[i], opt, meta.snapped, "sqrt(c_i)") * eps;
        if (s > inv_n) throw ReductionError(agent_tag(i) + "square side sqrt(c_i)*eps exceeds 1/n");
        side[i] = s;
        weight[i] = c[i] * d / (s * s);
    }
    for (long j = 1; j <= T; ++j) {
        Q lo = Q(j - 1) * d, hi = Q(j) * d;
        meta.tiles.push_back(TileRecord{static_cast<int>(j), lo, hi});
        for (std::size_t i = 0; i < n; ++i) {
            if (block_density_on(ch.agents[i], lo, hi).is_zero()) continue;
            Q off = Q(static_cast<long>(i)) * inv_n;
            Q x0 = Q(j) + off, y0 = Q(j * j) + off;
            raw.masses[i].polygons.push_back(rect(x0, y0, x0 + side[i], y0 + side[i], weight[i]));
        }
    }
    Q extent = Q(T * T);  // tiles span [1, T+1] x [1, T^2+1]
    auto inst = place(raw, Q(1), Q(1), extent, meta);
    return {inst, meta};
}

// ---------------------------------------------------------------------------
// Map-back from a square-cut path.

Side side_near(const FeasibleSolution& sol, const Point2& q, int dx, int dy) {
    std::vector<Q> xs{Q(0), Q(1)}, ys{Q(0), Q(1)};
    for (const auto& s : strips_of(sol)) {
        ys.push_back(s.y_lo);
        ys.push_back(s.y_hi);
        xs.push_back(s.cut);
    }
    Q t = Q(1, 2);
    for (const auto& x : xs)
        if (x != q.x) t = min(t, abs(x - q.x) / Q(2));
    for (const auto& y : ys)
        if (y != q.y) t = min(t, abs(y - q.y) / Q(2));
    return point_side(sol, {q.x + t * Q(dx), q.y + t * Q(dy)});
}

namespace {

Q fraction_in_a(const FeasibleSolution& sol, const CellRecord& c) {
    PizzaInstance probe;
    probe.normalized = true;
    probe.masses.push_back(MassDistribution{0, {rect(c.X0, c.Y0, c.X1, c.Y1, Q(1))}});
    auto ab = region_mass_oracle(probe, sol);
    return ab[0].first / ((c.X1 - c.X0) * (c.Y1 - c.Y0));
}

int label_of(Side s) { return s == Side::B ? -1 : +1; }

}  // namespace

CHSolution path_to_ch_cuts(const ReductionMeta& meta, const FeasibleSolution& sol) {
    if (meta.kind == ReductionKind::Straight) throw ReductionError("straight reductions map back through lines");
    struct Piece {
        Q lo, hi;
        int label;
    };
    std::vector<Piece> pieces;
    for (const auto& c : meta.cells) {
        int start = label_of(side_near(sol, {c.X0, c.Y0}, +1, +1));
        int end = label_of(side_near(sol, {c.X1, c.Y1}, -1, -1));
        Q p = fraction_in_a(sol, c);
        Q w = c.x_hi - c.x_lo;
        Q plus = p * w, minus = w - plus;
        if (start > 0 && end < 0) {
            pieces.push_back({c.x_lo, c.x_lo + plus, +1});
            pieces.push_back({c.x_lo + plus, c.x_hi, -1});
        } else if (start < 0 && end > 0) {
            pieces.push_back({c.x_lo, c.x_lo + minus, -1});
            pieces.push_back({c.x_lo + minus, c.x_hi, +1});
        } else if (start > 0) {
            pieces.push_back({c.x_lo, c.x_lo + minus, -1});
            pieces.push_back({c.x_lo + minus, c.x_hi, +1});
        } else {
            pieces.push_back({c.x_lo, c.x_lo + plus, +1});
            pieces.push_back({c.x_lo + plus, c.x_hi, -1});
        }
    }
    CHSolution out;
    int current = 0;
    for (const auto& pc : pieces) {
        if (pc.lo == pc.hi) continue;
        if (current == 0) out.first_label = pc.label;
        else if (pc.label != current) out.cuts.push_back(pc.lo);
        current = pc.label;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Straight lines.

StraightLine to_raw(const ReductionMeta& meta, const StraightLine& l) {
    const auto& t = meta.transform;
    return {l.a * t.scale, l.b * t.scale, l.c - l.a * t.scale * t.shift_x - l.b * t.scale * t.shift_y};
}

StraightLine from_raw(const ReductionMeta& meta, const StraightLine& l) {
    const auto& t = meta.transform;
    return {l.a / t.scale, l.b / t.scale, l.c + l.a * t.shift_x + l.b * t.shift_y};
}

namespace {

struct TileGeom {
    Q x0, y0;
    double fx0, fy0;
};

std::vector<TileGeom> tile_geometry(const ReductionMeta& meta) {
    std::vector<TileGeom> out;
    for (const auto& t : meta.tiles) {
        Q x = t.index, y = Q(static_cast<long>(t.index) * t.index);
        out.push_back({x, y, x.to_double(), y.to_double()});
    }
    return out;
}

// Sign pattern of a*x + b*y - c on the four corners: true when strictly positive and strictly negative values both occur.
bool crosses(const StraightLine& l, const TileGeom& t, double fa, double fb, double fc) {
    double v[4] = {fa * t.fx0 + fb * t.fy0 - fc, fa * (t.fx0 + 1) + fb * t.fy0 - fc, fa * t.fx0 + fb * (t.fy0 + 1) - fc,
                   fa * (t.fx0 + 1) + fb * (t.fy0 + 1) - fc};
    double lo = *std::min_element(v, v + 4), hi = *std::max_element(v, v + 4);
    double tol = 1e-9 * (std::abs(fa) + std::abs(fb)) * (std::abs(t.fx0) + std::abs(t.fy0) + 2) + 1e-12 * std::abs(fc);
    if (lo > tol || hi < -tol) return false;
    if (lo < -tol && hi > tol) return true;
    bool pos = false, neg = false;
    for (int dx = 0; dx < 2; ++dx)
        for (int dy = 0; dy < 2; ++dy) {
            int s = (l.a * (t.x0 + Q(dx)) + l.b * (t.y0 + Q(dy)) - l.c).sign();
            pos |= s > 0;
            neg |= s < 0;
        }
    return pos && neg;
}

int center_side(const StraightLine& l, const TileGeom& t) {
    return (l.a * (t.x0 + Q(1, 2)) + l.b * (t.y0 + Q(1, 2)) - l.c).sign();
}

int count_crossed(const StraightLine& l, const std::vector<TileGeom>& tiles) {
    double fa = l.a.to_double(), fb = l.b.to_double(), fc = l.c.to_double();
    int k = 0;
    for (const auto& t : tiles) k += crosses(l, t, fa, fb, fc);
    return k;
}

bool crosses_any(const StraightLine& l, const std::vector<TileGeom>& tiles) {
    double fa = l.a.to_double(), fb = l.b.to_double(), fc = l.c.to_double();
    for (const auto& t : tiles)
        if (crosses(l, t, fa, fb, fc)) return true;
    return false;
}

void check_line(const StraightLine& l) {
    if (l.a.is_zero() && l.b.is_zero()) throw std::invalid_argument("degenerate line with a = b = 0");
}

}  // namespace

int tiles_crossed(const ReductionMeta& meta, const StraightLine& raw) {
    check_line(raw);
    return count_crossed(raw, tile_geometry(meta));
}

LineRotation rotate_off_tiles(const ReductionMeta& meta, const StraightLine& line) {
    if (meta.kind != ReductionKind::Straight) throw ReductionError("line rotation needs a straight reduction");
    check_line(line);
    LineRotation rot;
    rot.before = line;
    rot.after = line;
    const auto tiles = tile_geometry(meta);
    StraightLine raw = to_raw(meta, line);
    rot.tiles_crossed = count_crossed(raw, tiles);
    if (rot.tiles_crossed == 0) return rot;

    Point2 pivot = raw.b.is_zero() ? Point2{raw.c / raw.a, Q(-1)} : Point2{Q(-1), (raw.c + raw.a) / raw.b};
    std::vector<StraightLine> cands;
    auto line_through = [&](const Point2& p, const Point2& q) {
        if (p == q) return;
        StraightLine l{-(q.y - p.y), q.x - p.x, Q(0)};
        if ((l.a * raw.a + l.b * raw.b).sign() < 0) {
            l.a = -l.a;
            l.b = -l.b;
        }
        l.c = l.a * p.x + l.b * p.y;
        cands.push_back(l);
    };
    for (const auto& t : tiles)
        for (int dx = 0; dx < 2; ++dx)
            for (int dy = 0; dy < 2; ++dy) line_through(pivot, {t.x0 + Q(dx), t.y0 + Q(dy)});
    line_through(pivot, pivot.x == Q(-1) ? Point2{Q(-1), pivot.y + 1} : Point2{pivot.x + 1, Q(-1)});

    // Lines through two corners of the crossed tiles and their neighbours.
    std::vector<char> crossed(tiles.size(), 0);
    {
        const double fa = raw.a.to_double(), fb = raw.b.to_double(), fc = raw.c.to_double();
        for (std::size_t t = 0; t < tiles.size(); ++t) crossed[t] = crosses(raw, tiles[t], fa, fb, fc);
    }
    std::vector<Point2> corners;
    for (std::size_t t = 0; t < tiles.size(); ++t) {
        bool near = false;
        for (std::size_t u = (t >= 2 ? t - 2 : 0); u < std::min(tiles.size(), t + 3); ++u) near |= crossed[u] != 0;
        if (!near) continue;
        for (int dx = 0; dx < 2; ++dx)
            for (int dy = 0; dy < 2; ++dy) corners.push_back({tiles[t].x0 + Q(dx), tiles[t].y0 + Q(dy)});
    }
    for (std::size_t a = 0; a < corners.size(); ++a)
        for (std::size_t b = a + 1; b < corners.size(); ++b) line_through(corners[a], corners[b]);

    std::vector<int> orig_side;
    for (const auto& t : tiles) orig_side.push_back(center_side(raw, t));
    const double na = raw.a.to_double(), nb = raw.b.to_double();
    int best = -1, best_far = 0, best_near = 0;
    double best_angle = 0;
    for (std::size_t k = 0; k < cands.size(); ++k) {
        const auto& l = cands[k];
        if (crosses_any(l, tiles)) continue;
        int far = 0, near = 0;
        for (std::size_t t = 0; t < tiles.size(); ++t)
            if (center_side(l, tiles[t]) != orig_side[t]) (crossed[t] ? near : far) += 1;
        double la = l.a.to_double(), lb = l.b.to_double();
        double cosang = std::abs(la * na + lb * nb) / (std::hypot(la, lb) * std::hypot(na, nb));
        double angle = std::acos(std::min(1.0, cosang));
        bool better = best < 0 || far < best_far || (far == best_far && near < best_near) ||
                      (far == best_far && near == best_near && angle < best_angle);
        if (better) {
            best = static_cast<int>(k);
            best_far = far;
            best_near = near;
            best_angle = angle;
        }
    }
    if (best < 0) throw ReductionError("no tile-free rotation found");
    rot.after = from_raw(meta, cands[best]);
    rot.rotated = true;
    return rot;
}

CHSolution lines_to_ch_cuts(const ReductionMeta& meta, const StraightCutSet& lines, std::vector<LineRotation>* rotations) {
    if (meta.kind != ReductionKind::Straight) throw ReductionError("lines map back only for straight reductions");
    const auto tiles = tile_geometry(meta);
    std::vector<StraightLine> raw;
    for (const auto& l : lines) {
        auto r = rotate_off_tiles(meta, l);
        raw.push_back(to_raw(meta, r.after));
        if (rotations) rotations->push_back(r);
    }
    CHSolution out;
    int prev = 0;
    for (std::size_t j = 0; j < tiles.size(); ++j) {
        int positive = 0;
        for (const auto& l : raw) positive += center_side(l, tiles[j]) > 0;
        int label = positive % 2 == 0 ? +1 : -1;
        if (j == 0) out.first_label = label;
        else if (label != prev) out.cuts.push_back(meta.tiles[j - 1].x_hi);
        prev = label;
    }
    return out;
}

StraightCutSet lines_for_cuts(const ReductionMeta& meta, const std::vector<Q>& cuts, int first_label) {
    if (meta.kind != ReductionKind::Straight) throw ReductionError("known lines exist only for straight reductions");
    StraightCutSet out;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        Q J = cuts[k] / meta.d;
        if (!J.is_integer()) throw ReductionError("cut " + cuts[k].str() + " is not on the d-grid");
        StraightLine raw{Q(1), Q(0), J + Q(1)};
        if (k == 0 && first_label < 0) raw = {Q(-1), Q(0), -(J + Q(1))};
        out.push_back(from_raw(meta, raw));
    }
    if (cuts.empty() && first_label < 0) out.push_back(from_raw(meta, StraightLine{Q(1), Q(0), Q(-1)}));
    return out;
}

// ---------------------------------------------------------------------------
// Verifiers.

VerifyReport verify_ch(const CHInstance& ch, const CHSolution& sol, const Q& eps) {
    if (sol.first_label != 1 && sol.first_label != -1) throw std::invalid_argument("first label must be + or -");
    std::vector<Q> bounds{ch.domain_lo};
    for (const auto& c : sol.cuts) {
        if (c < ch.domain_lo || c > ch.domain_hi) throw std::invalid_argument("cut " + c.str() + " outside the domain");
        if (c < bounds.back()) throw std::invalid_argument("cuts must be sorted");
        bounds.push_back(c);
    }
    bounds.push_back(ch.domain_hi);
    VerifyReport rep;
    for (const auto& v : ch.agents) {
        Q plus = 0, minus = 0;
        int label = sol.first_label;
        for (std::size_t k = 0; k + 1 < bounds.size(); ++k, label = -label)
            (label > 0 ? plus : minus) += agent_value(v, bounds[k], bounds[k + 1]);
        rep.plus.push_back(plus);
        rep.minus.push_back(minus);
        rep.gaps.push_back(abs(plus - minus));
        rep.max_gap = max(rep.max_gap, rep.gaps.back());
    }
    rep.pass = rep.max_gap <= eps;
    return rep;
}

namespace {

void parity_split(const std::vector<Point2>& poly, const StraightCutSet& lines, std::size_t i, int parity, Q& plus) {
    if (poly.size() < 3) return;
    if (i == lines.size()) {
        if (parity % 2 == 0) plus += convex_area(poly);
        return;
    }
    const auto& l = lines[i];
    bool any_pos = false, any_neg = false;
    for (const auto& p : poly) {
        int s = (l.a * p.x + l.b * p.y - l.c).sign();
        any_pos |= s > 0;
        any_neg |= s < 0;
    }
    if (!any_pos) return parity_split(poly, lines, i + 1, parity, plus);
    if (!any_neg) return parity_split(poly, lines, i + 1, parity + 1, plus);
    parity_split(clip_halfplane(poly, l.a, l.b, l.c), lines, i + 1, parity, plus);
    parity_split(clip_halfplane(poly, -l.a, -l.b, -l.c), lines, i + 1, parity + 1, plus);
}

}  // namespace

std::vector<Q> parity_plus_mass(const PizzaInstance& inst, const StraightCutSet& lines) {
    for (const auto& l : lines) check_line(l);
    std::vector<Q> out;
    for (const auto& m : inst.masses) {
        Q plus = 0;
        for (const auto& poly : m.polygons)
            for (const auto& t : triangulate(poly)) {
                Q area = 0;
                parity_split({t.a, t.b, t.c}, lines, 0, 0, area);
                plus += t.weight * area;
            }
        out.push_back(plus);
    }
    return out;
}

VerifyReport verify_straight(const PizzaInstance& inst, const StraightCutSet& lines, const Q& eps, std::size_t budget) {
    VerifyReport rep;
    rep.plus = parity_plus_mass(inst, lines);
    for (std::size_t i = 0; i < inst.masses.size(); ++i) {
        rep.minus.push_back(color_total_mass(inst.masses[i]) - rep.plus[i]);
        rep.gaps.push_back(abs(rep.plus[i] - rep.minus[i]));
        rep.max_gap = max(rep.max_gap, rep.gaps.back());
    }
    rep.pass = rep.max_gap <= eps;
    if (budget > 0 && lines.size() > budget) {
        rep.pass = false;
        rep.warnings.push_back("line count " + std::to_string(lines.size()) + " exceeds budget " + std::to_string(budget));
    }
    return rep;
}

VerifyReport verify_scpath(const PizzaInstance& inst, const FeasibleSolution& sol, const Q& eps, int turn_budget,
                           const ReductionMeta* meta) {
    VerifyReport rep;
    for (auto& [a, b] : region_mass_oracle(inst, sol)) {
        rep.plus.push_back(a);
        rep.minus.push_back(b);
        rep.gaps.push_back(abs(a - b));
        rep.max_gap = max(rep.max_gap, rep.gaps.back());
    }
    rep.pass = rep.max_gap <= eps;
    auto path = solution_to_path(sol);
    int turns = turn_count(path);
    if (turn_budget >= 0 && turns > turn_budget) {
        rep.pass = false;
        rep.warnings.push_back("path has " + std::to_string(turns) + " turns, budget " + std::to_string(turn_budget));
    }
    if (meta && meta->kind == ReductionKind::Exact) {
        for (std::size_t i = 1; i < path.segments.size(); ++i) {
            const auto& s = path.segments[i];
            if (s.horizontal == path.segments[i - 1].horizontal) continue;
            for (const auto& c : meta->cells)
                if (c.X0 < s.x0 && s.x0 < c.X1 && c.Y0 < s.y0 && s.y0 < c.Y1)
                    rep.warnings.push_back("turn at (" + s.x0.str() + ", " + s.y0.str() + ") inside gadget square " +
                                           std::to_string(c.index));
        }
    }
    return rep;
}

}  // namespace pizza
