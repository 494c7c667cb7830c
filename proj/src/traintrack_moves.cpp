#include <algorithm>
#include <functional>

#include "dynnikov/traintrack.hpp"

namespace dyn {

namespace {

std::string fresh_branch_id(const TrainTrack& t, const std::string& base) {
    auto taken = [&](const std::string& id) {
        return std::any_of(t.branches.begin(), t.branches.end(), [&](const Branch& b) { return b.id == id; });
    };
    if (!taken(base)) return base;
    for (int k = 2;; ++k)
        if (!taken(base + std::to_string(k))) return base + std::to_string(k);
}

std::string fresh_switch_id(const TrainTrack& t, const std::string& base) {
    auto taken = [&](const std::string& id) {
        return std::any_of(t.switches.begin(), t.switches.end(), [&](const Switch& s) { return s.id == id; });
    };
    if (!taken(base)) return base;
    for (int k = 2;; ++k)
        if (!taken(base + std::to_string(k))) return base + std::to_string(k);
}

int add_branch(TrainTrack& t, const std::string& base, bool main) {
    t.branches.push_back(Branch{fresh_branch_id(t, base), main, {}});
    return int(t.branches.size()) - 1;
}

int add_switch(TrainTrack& t, const std::string& base) {
    t.switches.push_back(Switch{fresh_switch_id(t, base), {}});
    return int(t.switches.size()) - 1;
}

void replace_ref(TrainTrack& t, const HalfRef& from, const HalfRef& to) {
    for (auto& sw : t.switches)
        for (auto& side : sw.sides)
            for (auto& h : side)
                if (h == from) {
                    h = to;
                    return;
                }
    throw DomainError("half-branch not found");
}

std::multiset<int> vertex_counts(const std::vector<Face>& faces) {
    std::multiset<int> s;
    for (const auto& f : faces) s.insert(f.vertices());
    return s;
}

RatMatrix extend_psi(std::size_t old_e, std::size_t new_e) {
    RatMatrix psi(new_e, old_e);
    for (std::size_t i = 0; i < old_e; ++i) psi(i, i) = 1;
    return psi;
}

const Face& checked_face(const TrainTrack& t, std::size_t face, int edge) {
    if (face >= t.faces.size()) throw DomainError("no region with index " + std::to_string(face));
    const Face& f = t.faces[face];
    if (edge < 1 || edge > f.vertices())
        throw DomainError("edge index must lie in 1.." + std::to_string(f.vertices()));
    return f;
}

// Try every combination of the two-element orders, keep the first layout that is planar
// and has the expected region sizes.
template <class Build>
TrainTrack first_valid_layout(const Build& build, const std::multiset<int>& expected,
                              const std::function<std::set<BranchSide>(const TrainTrack&)>& markers) {
    for (int mask = 0; mask < 4; ++mask) {
        TrainTrack c = build(mask);
        try {
            locate_ends(c.switches, c.branches);
            auto faces = trace_faces(c.switches, c.branches);
            if (long(c.switches.size()) - long(c.branches.size()) + long(faces.size()) != 2) continue;
            if (vertex_counts(faces) != expected) continue;
            c.faces = faces;
            c.puncture_markers = markers(c);
            c.rebuild();
            return c;
        } catch (const DomainError&) {
            continue;
        }
    }
    throw DomainError("no planar layout realises the move");
}

}  // namespace

MoveResult pinch_unpunctured(const TrainTrack& t, std::size_t face, int edge) {
    const Face& f = checked_face(t, face, edge);
    const int m = f.vertices();
    if (f.punctured) throw DomainError("pinch_unpunctured needs an unpunctured region");
    if (m < 4) throw DomainError("pinching needs an unpunctured region with at least 4 cusps");
    auto edges = f.edges();
    const Step xs = edges[std::size_t((edge - 2 + m) % m)].back();
    const Step ys = edges[std::size_t(edge % m)].front();
    if (xs.branch == ys.branch) throw DomainError("adjacent edges share a branch; pinch a different edge");
    const End x_far = xs.dir > 0 ? End::From : End::To;
    const End y_far = ys.dir > 0 ? End::To : End::From;

    auto expected = vertex_counts(t.faces);
    expected.erase(expected.find(m));
    expected.insert(m - 1);
    expected.insert(3);

    auto build = [&](int mask) {
        TrainTrack c = t;
        c.annotations.clear();
        c.parameters.clear();
        const std::string xid = t.branches[std::size_t(xs.branch)].id, yid = t.branches[std::size_t(ys.branch)].id;
        int xp = add_branch(c, xid + "'", t.branches[std::size_t(xs.branch)].main);
        int yp = add_branch(c, yid + "'", t.branches[std::size_t(ys.branch)].main);
        int eps = add_branch(c, "eps", true);
        replace_ref(c, HalfRef{xs.branch, x_far}, HalfRef{xp, End::From});
        replace_ref(c, HalfRef{ys.branch, y_far}, HalfRef{yp, End::From});
        int sm = add_switch(c, "M");
        int ss = add_switch(c, "S");
        c.switches[std::size_t(sm)].side(Side::A) = {HalfRef{eps, End::From}};
        c.switches[std::size_t(sm)].side(Side::B) = {HalfRef{xp, End::To}, HalfRef{yp, End::To}};
        c.switches[std::size_t(ss)].side(Side::A) = {HalfRef{eps, End::To}};
        c.switches[std::size_t(ss)].side(Side::B) = {HalfRef{ys.branch, y_far}, HalfRef{xs.branch, x_far}};
        if (mask & 1) std::swap(c.switches[std::size_t(sm)].side(Side::B)[0], c.switches[std::size_t(sm)].side(Side::B)[1]);
        if (mask & 2) std::swap(c.switches[std::size_t(ss)].side(Side::B)[0], c.switches[std::size_t(ss)].side(Side::B)[1]);
        return c;
    };
    TrainTrack out = first_valid_layout(build, expected, [&](const TrainTrack&) { return t.puncture_markers; });

    const std::size_t e = t.branches.size();
    RatMatrix psi = extend_psi(e, out.branches.size());
    psi(e, std::size_t(xs.branch)) = 1;
    psi(e + 1, std::size_t(ys.branch)) = 1;
    psi(e + 2, std::size_t(xs.branch)) = 1;
    psi(e + 2, std::size_t(ys.branch)) = 1;
    return {out, psi};
}

MoveResult pinch_punctured(const TrainTrack& t, std::size_t face, int edge) {
    const Face& f = checked_face(t, face, edge);
    const int m = f.vertices();
    if (!f.punctured) throw DomainError("pinch_punctured needs a punctured region");
    if (m < 2) throw DomainError("pinching needs a punctured region with at least 2 cusps");
    const Step zs = f.edges()[std::size_t(edge - 1)].front();
    const int z = zs.branch;
    const End z_start = zs.dir > 0 ? End::From : End::To;
    const End z_arrive = other(z_start);

    auto expected = vertex_counts(t.faces);
    expected.erase(expected.find(m));
    expected.insert(m + 1);
    expected.insert(1);

    int zp = -1;
    auto build = [&](int mask) {
        TrainTrack c = t;
        c.annotations.clear();
        c.parameters.clear();
        const std::string zid = t.branches[std::size_t(z)].id;
        zp = add_branch(c, zid + "'", t.branches[std::size_t(z)].main);
        int zpp = add_branch(c, zid + "''", t.branches[std::size_t(z)].main);
        int eps = add_branch(c, "eps", true);
        // z' and z'' follow z's direction, so z's sides keep their meaning on them.
        const bool forward = z_start == End::From;
        replace_ref(c, HalfRef{z, z_start}, HalfRef{forward ? zp : zpp, forward ? End::From : End::To});
        replace_ref(c, HalfRef{z, z_arrive}, HalfRef{forward ? zpp : zp, forward ? End::To : End::From});
        int sx = add_switch(c, "X");
        int sy = add_switch(c, "Y");
        c.switches[std::size_t(sx)].side(Side::A) = {HalfRef{eps, End::From}};
        c.switches[std::size_t(sx)].side(Side::B) = {HalfRef{zp, End::To}, HalfRef{zpp, End::From}};
        c.switches[std::size_t(sy)].side(Side::A) = {HalfRef{eps, End::To}};
        c.switches[std::size_t(sy)].side(Side::B) = {HalfRef{z, End::From}, HalfRef{z, End::To}};
        if (mask & 1) std::swap(c.switches[std::size_t(sx)].side(Side::B)[0], c.switches[std::size_t(sx)].side(Side::B)[1]);
        if (mask & 2) std::swap(c.switches[std::size_t(sy)].side(Side::B)[0], c.switches[std::size_t(sy)].side(Side::B)[1]);
        return c;
    };
    auto markers = [&](const TrainTrack& c) {
        std::set<BranchSide> mk;
        for (const auto& s : t.puncture_markers) {
            if (f.contains(s)) continue;
            // The half of z nearest its from end inherits z's sides.
            mk.insert(s.branch == z ? BranchSide{zp, s.left} : s);
        }
        // The new monogon is bounded by the loop z alone; its outside may also be a monogon.
        for (const auto& g : c.faces)
            if (g.vertices() == 1 && g.steps.size() == 1 && g.steps[0].branch == z)
                mk.insert(BranchSide{z, g.steps[0].dir > 0});
        return mk;
    };
    TrainTrack out = first_valid_layout(build, expected, markers);

    const std::size_t e = t.branches.size();
    RatMatrix psi = extend_psi(e, out.branches.size());
    psi(e, std::size_t(z)) = 1;
    psi(e + 1, std::size_t(z)) = 1;
    psi(e + 2, std::size_t(z)) = 2;
    return {out, psi};
}

MoveResult pinch_to_complete(const TrainTrack& t) {
    MoveResult acc{t, RatMatrix::identity(t.branches.size())};
    for (int guard = 0; guard < 4 * int(t.branches.size()) + 8; ++guard) {
        std::size_t target = acc.track.faces.size();
        for (std::size_t i = 0; i < acc.track.faces.size(); ++i) {
            const Face& f = acc.track.faces[i];
            if ((f.punctured && f.vertices() >= 2) || (!f.punctured && f.vertices() >= 4)) {
                target = i;
                break;
            }
        }
        if (target == acc.track.faces.size()) return acc;
        const Face& f = acc.track.faces[target];
        MoveResult step;
        bool done = false;
        for (int edge = 1; edge <= f.vertices() && !done; ++edge) {
            try {
                step = f.punctured ? pinch_punctured(acc.track, target, edge)
                                   : pinch_unpunctured(acc.track, target, edge);
                done = true;
            } catch (const DomainError&) {
            }
        }
        if (!done) throw DomainError("no edge of a non-complete region can be pinched");
        acc = MoveResult{step.track, step.psi * acc.psi};
    }
    throw DomainError("pinching did not terminate");
}

mpz_class catalan(unsigned k) {
    mpz_class a, b;
    mpz_bin_uiui(a.get_mpz_t(), 2 * k, k);
    if (k == 0) return a;
    mpz_bin_uiui(b.get_mpz_t(), 2 * k, k - 1);
    return a - b;
}

mpz_class diagonal_extensions_count(const TrainTrack& t) {
    mpz_class xi = 1;
    for (const auto& f : t.faces) {
        const int p = f.vertices();
        if (f.punctured) xi *= p * catalan(unsigned(p - 1));
        else xi *= catalan(unsigned(p - 2));
    }
    return xi;
}

std::vector<std::vector<std::pair<int, int>>> triangulations(int m) {
    if (m < 3) throw DomainError("a polygon needs at least 3 vertices");
    // Vertices lo..hi, with lo-hi already an edge or diagonal.
    std::function<std::vector<std::vector<std::pair<int, int>>>(int, int)> rec = [&](int lo, int hi) {
        std::vector<std::vector<std::pair<int, int>>> out;
        if (hi - lo < 2) return std::vector<std::vector<std::pair<int, int>>>{{}};
        for (int apex = lo + 1; apex < hi; ++apex)
            for (const auto& left : rec(lo, apex))
                for (const auto& right : rec(apex, hi)) {
                    std::vector<std::pair<int, int>> d = left;
                    d.insert(d.end(), right.begin(), right.end());
                    if (apex - lo >= 2) d.emplace_back(lo, apex);
                    if (hi - apex >= 2) d.emplace_back(apex, hi);
                    out.push_back(d);
                }
        return out;
    };
    return rec(0, m - 1);
}

namespace {

// One way of completing a single region.
struct RegionChoice {
    int loop_vertex = -1;                    // punctured regions: cusp receiving the encircling loop
    std::vector<std::pair<int, int>> diags;  // on the (possibly enlarged) polygon
};

std::vector<RegionChoice> region_choices(const Face& f) {
    const int p = f.vertices();
    std::vector<RegionChoice> out;
    if (f.punctured) {
        if (p == 1) return {RegionChoice{}};
        for (int v = 0; v < p; ++v)
            for (auto& d : triangulations(p + 1)) out.push_back(RegionChoice{v, d});
    } else {
        for (auto& d : triangulations(p)) out.push_back(RegionChoice{-1, d});
    }
    return out;
}

// Insert the branches of one choice into the cusp slots of region f.
void apply_choice(TrainTrack& c, const Face& f, const RegionChoice& ch,
                  std::vector<std::tuple<int, Side, std::size_t, std::vector<HalfRef>>>& inserts, int& loop_branch) {
    const int p = f.vertices();
    // Polygon vertices after the loop: each maps to (original cusp, part) with part 0 before the loop, 1 after.
    std::vector<std::pair<int, int>> verts;
    for (int v = 0; v < p; ++v) {
        verts.emplace_back(v, 0);
        if (v == ch.loop_vertex) verts.emplace_back(v, 1);
    }
    const int m = int(verts.size());
    std::vector<std::vector<std::pair<int, HalfRef>>> fan(static_cast<std::size_t>(m));  // (offset, end)
    for (const auto& [i, j] : ch.diags) {
        int b = add_branch(c, "x", false);
        fan[std::size_t(i)].emplace_back((j - i + m) % m, HalfRef{b, End::From});
        fan[std::size_t(j)].emplace_back((i - j + m) % m, HalfRef{b, End::To});
    }
    if (ch.loop_vertex >= 0) loop_branch = add_branch(c, "loop", false);
    for (int v = 0; v < p; ++v) {
        // Vertex v of the region ends edge v+1; its cusp is f.cusps[v].
        std::vector<HalfRef> block;
        auto push_fan = [&](int pv) {
            auto& fs = fan[std::size_t(pv)];
            std::sort(fs.begin(), fs.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
            for (const auto& [off, h] : fs) block.push_back(h);
        };
        int pv = int(std::find(verts.begin(), verts.end(), std::pair{v, 0}) - verts.begin());
        push_fan(pv);
        if (v == ch.loop_vertex) {
            block.push_back(HalfRef{loop_branch, End::From});
            block.push_back(HalfRef{loop_branch, End::To});
            push_fan(pv + 1);
        }
        if (block.empty()) continue;
        const Cusp& cu = f.cusps[std::size_t(v)];
        if (cu.side == Side::A) std::reverse(block.begin(), block.end());
        inserts.emplace_back(cu.sw, cu.side, cu.insert_at, block);
    }
}

}  // namespace

std::vector<MoveResult> enumerate_diagonal_extensions(const TrainTrack& t) {
    std::vector<std::size_t> open;
    std::vector<std::vector<RegionChoice>> choices;
    for (std::size_t i = 0; i < t.faces.size(); ++i) {
        auto ch = region_choices(t.faces[i]);
        if (ch.size() == 1 && ch[0].diags.empty() && ch[0].loop_vertex < 0) continue;
        open.push_back(i);
        choices.push_back(std::move(ch));
    }
    std::vector<MoveResult> out;
    std::vector<std::size_t> pick(open.size(), 0);
    for (;;) {
        TrainTrack c = t;
        c.annotations.clear();
        c.parameters.clear();
        std::vector<std::tuple<int, Side, std::size_t, std::vector<HalfRef>>> inserts;
        std::set<BranchSide> markers = t.puncture_markers;
        std::vector<int> loops;
        for (std::size_t r = 0; r < open.size(); ++r) {
            const Face& f = t.faces[open[r]];
            int loop = -1;
            apply_choice(c, f, choices[r][pick[r]], inserts, loop);
            if (loop >= 0) {
                for (auto it = markers.begin(); it != markers.end();)
                    it = f.contains(*it) ? markers.erase(it) : std::next(it);
                loops.push_back(loop);
            }
        }
        std::sort(inserts.begin(), inserts.end(), [](const auto& x, const auto& y) {
            return std::get<2>(x) > std::get<2>(y);
        });
        for (const auto& [sw, side, at, block] : inserts) {
            auto& list = c.switches[std::size_t(sw)].side(side);
            list.insert(list.begin() + long(at), block.begin(), block.end());
        }
        locate_ends(c.switches, c.branches);
        auto faces = trace_faces(c.switches, c.branches);
        for (int lp : loops)
            for (const auto& g : faces)
                if (g.vertices() == 1 && g.steps.size() == 1 && g.steps[0].branch == lp)
                    markers.insert(BranchSide{lp, g.steps[0].dir > 0});
        c.puncture_markers = markers;
        c.rebuild();
        if (!c.complete()) throw DomainError("diagonal extension is not complete");
        out.push_back(MoveResult{c, extend_psi(t.branches.size(), c.branches.size())});

        std::size_t r = 0;
        for (; r < open.size(); ++r) {
            if (++pick[r] < choices[r].size()) break;
            pick[r] = 0;
        }
        if (r == open.size()) break;
    }
    return out;
}

}  // namespace dyn
