#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "dynnikov/coords.hpp"
#include "dynnikov/errors.hpp"
#include "dynnikov/matrix.hpp"
#include "dynnikov/scalar.hpp"

namespace dyn {

enum class Side { A = 0, B = 1 };
enum class End { From = 0, To = 1 };

inline Side opposite(Side s) { return s == Side::A ? Side::B : Side::A; }
inline End other(End e) { return e == End::From ? End::To : End::From; }

struct HalfRef {
    int branch = -1;
    End end = End::From;
    bool operator==(const HalfRef&) const = default;
};

// Half-branch ends on each side, read left to right looking from side A towards side B.
struct Switch {
    std::string id;
    std::array<std::vector<HalfRef>, 2> sides;
    std::vector<HalfRef>& side(Side s) { return sides[std::size_t(s)]; }
    const std::vector<HalfRef>& side(Side s) const { return sides[std::size_t(s)]; }
};

struct EndLocation {
    int sw = -1;
    Side side = Side::A;
    std::size_t slot = 0;
};

struct Branch {
    std::string id;
    bool main = true;
    std::array<EndLocation, 2> ends;  // derived from the switch lists
    const EndLocation& at(End e) const { return ends[std::size_t(e)]; }
};

// dir = +1 traverses from -> to.
struct Step {
    int branch = -1;
    int dir = 1;
    bool operator==(const Step&) const = default;
};
using TrainPath = std::vector<Step>;

// A side of a branch: left or right relative to its from -> to direction.
struct BranchSide {
    int branch = -1;
    bool left = true;
    auto operator<=>(const BranchSide&) const = default;
};

struct Cusp {
    int sw = -1;
    Side side = Side::A;
    std::size_t insert_at = 0;  // slot index where new half-branches enter this cusp
};

// Complementary region traced with the region on the left of each step.
// Rotated so that a cusp follows the last step; edge k ends at cusps[k].
struct Face {
    std::vector<Step> steps;
    std::vector<bool> cusp_after;
    std::vector<Cusp> cusps;
    bool punctured = false;

    int vertices() const { return int(cusps.size()); }
    std::vector<TrainPath> edges() const;
    bool contains(const BranchSide& s) const;
};

struct ArcAnnotation {
    std::map<int, long> counts;
    std::vector<TrainPath> paths;
};

class TrainTrack {
public:
    int n = 3;
    std::vector<Switch> switches;
    std::vector<Branch> branches;
    std::vector<int> parameters;  // empty means the main branches
    std::map<std::string, ArcAnnotation> annotations;
    std::set<BranchSide> puncture_markers;  // one side of each punctured region
    std::vector<Face> faces;                // derived

    // Recompute branch end locations and faces; throws on any invariant violation.
    void rebuild();

    int branch_index(const std::string& id) const;
    int switch_index(const std::string& id) const;
    int rank() const { return int(branches.size()) - int(switches.size()); }
    bool complete() const { return rank() == 2 * n - 4; }
    std::vector<int> parameter_branches() const;
    std::size_t face_of(const BranchSide& s) const;
};

// Faces of the ribbon structure without any validation.
std::vector<Face> trace_faces(const std::vector<Switch>& switches, const std::vector<Branch>& branches);
void locate_ends(const std::vector<Switch>& switches, std::vector<Branch>& branches);

TrainTrack load_track(const nlohmann::json& doc);
TrainTrack load_track_file(const std::string& path);
nlohmann::json to_json(const TrainTrack& t);

TrainPath parse_path(const TrainTrack& t, const std::vector<std::string>& tokens);
std::string render_path(const TrainTrack& t, const TrainPath& p);
void check_smooth(const TrainTrack& t, const TrainPath& p);

// ---- measures ----

std::vector<mpq_class> parse_measure(const TrainTrack& t, const nlohmann::json& doc);

template <class S>
bool check_switch_conditions(const TrainTrack& t, const std::vector<S>& mu) {
    if (mu.size() != t.branches.size()) throw DomainError("measure does not cover every branch");
    for (const auto& sw : t.switches) {
        S a = scalar_traits<S>::zero_like(mu.empty() ? S(0) : mu[0]), b = a;
        for (const auto& h : sw.side(Side::A)) a += mu[std::size_t(h.branch)];
        for (const auto& h : sw.side(Side::B)) b += mu[std::size_t(h.branch)];
        if (a != b) return false;
    }
    return true;
}

// Branch weights as linear functions of the parameter branches: rows = branches, cols = parameters.
RatMatrix parameter_basis(const TrainTrack& t);
std::vector<mpq_class> measure_from_parameters(const TrainTrack& t, const std::vector<mpq_class>& values);
std::vector<mpq_class> parameters_of(const TrainTrack& t, const std::vector<mpq_class>& mu);

// Value plus gradient with respect to the parameters.
struct Lin {
    mpq_class v;
    std::vector<mpq_class> g;
};
Lin operator+(const Lin& x, const Lin& y);
Lin operator-(const Lin& x, const Lin& y);
Lin operator*(long k, const Lin& x);

struct ExactOps {
    mpq_class min(const mpq_class& x, const mpq_class& y) const { return smin(x, y); }
    mpq_class max(const mpq_class& x, const mpq_class& y) const { return smax(x, y); }
};
struct LinOps {
    Lin min(const Lin& x, const Lin& y) const;
    Lin max(const Lin& x, const Lin& y) const;
};

// Leaves following p: the first branch's interval is pushed through each switch in stack
// coordinates (measured from the left looking from side A to side B) and clipped.
template <class T, class Ops>
T path_measure_generic(const TrainTrack& t, const TrainPath& p, const std::vector<T>& mu, const T& zero,
                       const Ops& ops) {
    if (p.empty()) throw DomainError("empty train path");
    check_smooth(t, p);
    auto offset = [&](const EndLocation& loc) {
        T o = zero;
        const auto& list = t.switches[std::size_t(loc.sw)].side(loc.side);
        for (std::size_t k = 0; k < loc.slot; ++k) o = o + mu[std::size_t(list[k].branch)];
        return o;
    };
    T lo = zero, hi = mu[std::size_t(p[0].branch)];
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const Step& a = p[i];
        const Step& b = p[i + 1];
        const T& wa = mu[std::size_t(a.branch)];
        const T& wb = mu[std::size_t(b.branch)];
        const EndLocation& in = t.branches[std::size_t(a.branch)].at(a.dir > 0 ? End::To : End::From);
        const EndLocation& out = t.branches[std::size_t(b.branch)].at(b.dir > 0 ? End::From : End::To);
        T o = offset(in), o2 = offset(out);
        T slo, shi;
        if (in.side == Side::A) {
            slo = o + lo;
            shi = o + hi;
        } else {
            slo = o + wa - hi;
            shi = o + wa - lo;
        }
        if (out.side == Side::B) {
            lo = slo - o2;
            hi = shi - o2;
        } else {
            lo = o2 + wb - shi;
            hi = o2 + wb - slo;
        }
        lo = ops.max(lo, zero);
        hi = ops.min(hi, wb);
    }
    return ops.max(zero, hi - lo);
}

mpq_class path_measure(const TrainTrack& t, const TrainPath& p, const std::vector<mpq_class>& mu);
mpq_class arc_measure(const TrainTrack& t, const std::string& arc, const std::vector<mpq_class>& mu);
DynnikovVector<mpq_class> change_of_coords(const TrainTrack& t, const std::vector<mpq_class>& mu);
// Rows follow the flat Dynnikov order, columns the parameter branches.
RatMatrix linearize_change_of_coords(const TrainTrack& t, const std::vector<mpq_class>& mu);

// ---- transition matrices ----

struct TransitionMatrix {
    IntMatrix matrix;
    std::size_t m = 0;                     // main branch count
    std::vector<std::size_t> permutation;  // image of each infinitesimal branch, when given
    IntMatrix main_block() const;
};

TransitionMatrix load_transition(const nlohmann::json& doc);
TransitionMatrix load_transition_file(const std::string& path);

struct PerronFrobenius {
    mpf_class lambda;
    std::vector<mpf_class> vector;  // strictly positive, unit Euclidean norm
};
PerronFrobenius transition_pf(const TransitionMatrix& t, unsigned bits = 192);
PerronFrobenius perron_frobenius(const IntMatrix& m, unsigned bits = 192);
bool strongly_connected(const IntMatrix& m);

bool verify_conjugacy(const IntMatrix& d, const RatMatrix& l, const IntMatrix& tp);
// Fill the unknown entries of tp so that d l = l tp.
RatMatrix solve_completion(const IntMatrix& d, const RatMatrix& l,
                           const std::vector<std::vector<std::optional<mpq_class>>>& tp);

// ---- moves ----

struct MoveResult {
    TrainTrack track;
    RatMatrix psi;  // new weights = psi * old weights
};

MoveResult pinch_unpunctured(const TrainTrack& t, std::size_t face, int edge);
MoveResult pinch_punctured(const TrainTrack& t, std::size_t face, int edge);
// Pinch every non-complete region until complete.
MoveResult pinch_to_complete(const TrainTrack& t);

mpz_class catalan(unsigned k);
mpz_class diagonal_extensions_count(const TrainTrack& t);
std::vector<MoveResult> enumerate_diagonal_extensions(const TrainTrack& t);
// Non-crossing triangulations of a convex m-gon with vertices 0..m-1, as diagonal lists.
std::vector<std::vector<std::pair<int, int>>> triangulations(int m);

}  // namespace dyn
