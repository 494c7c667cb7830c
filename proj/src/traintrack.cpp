#include "dynnikov/traintrack.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace dyn {

using nlohmann::json;

std::vector<TrainPath> Face::edges() const {
    std::vector<TrainPath> out;
    TrainPath cur;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        cur.push_back(steps[i]);
        if (cusp_after[i]) {
            out.push_back(cur);
            cur.clear();
        }
    }
    return out;
}

bool Face::contains(const BranchSide& s) const {
    for (const auto& st : steps)
        if (st.branch == s.branch && (st.dir > 0) == s.left) return true;
    return false;
}

void locate_ends(const std::vector<Switch>& switches, std::vector<Branch>& branches) {
    std::vector<std::array<int, 2>> seen(branches.size(), {0, 0});
    for (std::size_t s = 0; s < switches.size(); ++s)
        for (Side side : {Side::A, Side::B}) {
            const auto& list = switches[s].side(side);
            for (std::size_t k = 0; k < list.size(); ++k) {
                const HalfRef& h = list[k];
                if (h.branch < 0 || std::size_t(h.branch) >= branches.size())
                    throw ParseError("switch " + switches[s].id + " references an unknown branch");
                auto& b = branches[std::size_t(h.branch)];
                if (seen[std::size_t(h.branch)][std::size_t(h.end)]++)
                    throw ParseError("branch " + b.id + " has a repeated " +
                                     (h.end == End::From ? "from" : "to") + " end");
                b.ends[std::size_t(h.end)] = EndLocation{int(s), side, k};
            }
        }
    for (std::size_t b = 0; b < branches.size(); ++b)
        for (int e = 0; e < 2; ++e)
            if (!seen[b][std::size_t(e)])
                throw ParseError("branch " + branches[b].id + " has a dangling " + (e ? "to" : "from") + " end");
}

namespace {

// Step leaving the switch after arriving along st, keeping the region on the left.
std::pair<Step, bool> next_step(const std::vector<Switch>& switches, const std::vector<Branch>& branches,
                                const Step& st) {
    const EndLocation& in = branches[std::size_t(st.branch)].at(st.dir > 0 ? End::To : End::From);
    const Switch& sw = switches[std::size_t(in.sw)];
    const auto& same = sw.side(in.side);
    const auto& far = sw.side(opposite(in.side));
    HalfRef h;
    bool cusp;
    if (in.side == Side::A) {
        cusp = in.slot > 0;
        h = cusp ? same[in.slot - 1] : far.front();
    } else {
        cusp = in.slot + 1 < same.size();
        h = cusp ? same[in.slot + 1] : far.back();
    }
    return {Step{h.branch, h.end == End::From ? 1 : -1}, cusp};
}

std::size_t side_key(const Step& s) { return std::size_t(s.branch) * 2 + (s.dir > 0 ? 0 : 1); }

}  // namespace

std::vector<Face> trace_faces(const std::vector<Switch>& switches, const std::vector<Branch>& branches) {
    std::vector<char> used(branches.size() * 2, 0);
    std::vector<Face> faces;
    for (std::size_t key = 0; key < used.size(); ++key) {
        if (used[key]) continue;
        Step start{int(key / 2), key % 2 == 0 ? 1 : -1};
        Face f;
        Step cur = start;
        do {
            used[side_key(cur)] = 1;
            auto [nx, cusp] = next_step(switches, branches, cur);
            f.steps.push_back(cur);
            f.cusp_after.push_back(cusp);
            if (cusp) {
                const EndLocation& in = branches[std::size_t(cur.branch)].at(cur.dir > 0 ? End::To : End::From);
                f.cusps.push_back(Cusp{in.sw, in.side, in.side == Side::A ? in.slot : in.slot + 1});
            }
            cur = nx;
            if (f.steps.size() > 4 * branches.size() + 4) throw DomainError("face tracing did not close");
        } while (!(cur == start));
        // Rotate so the last step is followed by a cusp.
        auto it = std::find(f.cusp_after.begin(), f.cusp_after.end(), true);
        if (it != f.cusp_after.end()) {
            std::size_t k = std::size_t(it - f.cusp_after.begin()) + 1;
            std::rotate(f.steps.begin(), f.steps.begin() + long(k % f.steps.size()), f.steps.end());
            std::rotate(f.cusp_after.begin(), f.cusp_after.begin() + long(k % f.cusp_after.size()),
                        f.cusp_after.end());
            std::rotate(f.cusps.begin(), f.cusps.begin() + 1, f.cusps.end());
        }
        faces.push_back(std::move(f));
    }
    return faces;
}

int TrainTrack::branch_index(const std::string& id) const {
    for (std::size_t i = 0; i < branches.size(); ++i)
        if (branches[i].id == id) return int(i);
    throw ParseError("unknown branch '" + id + "'");
}

int TrainTrack::switch_index(const std::string& id) const {
    for (std::size_t i = 0; i < switches.size(); ++i)
        if (switches[i].id == id) return int(i);
    throw ParseError("unknown switch '" + id + "'");
}

std::vector<int> TrainTrack::parameter_branches() const {
    if (!parameters.empty()) return parameters;
    std::vector<int> out;
    for (std::size_t i = 0; i < branches.size(); ++i)
        if (branches[i].main) out.push_back(int(i));
    return out;
}

std::size_t TrainTrack::face_of(const BranchSide& s) const {
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (faces[f].contains(s)) return f;
    throw DomainError("branch side not found on any region");
}

void TrainTrack::rebuild() {
    if (n < 3) throw DomainError("strand count must be at least 3");
    if (branches.empty()) throw DomainError("train track has no branches");
    for (const auto& sw : switches)
        if (sw.side(Side::A).empty() || sw.side(Side::B).empty())
            throw DomainError("switch " + sw.id + " needs half-branches on both sides");
    locate_ends(switches, branches);

    std::vector<int> parent(switches.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
        return x;
    };
    for (const auto& b : branches) parent[std::size_t(find(b.ends[0].sw))] = find(b.ends[1].sw);
    for (std::size_t s = 0; s < switches.size(); ++s)
        if (find(int(s)) != find(0)) throw DomainError("train track is not connected");

    faces = trace_faces(switches, branches);
    const long euler = long(switches.size()) - long(branches.size()) + long(faces.size());
    if (euler != 2) throw DomainError("half-branch orders do not describe a planar train track");

    std::size_t punctured = 0;
    for (auto& f : faces) {
        int marks = 0;
        for (const auto& m : puncture_markers)
            if (f.contains(m)) ++marks;
        if (marks > 1) throw DomainError("a region carries more than one puncture");
        f.punctured = marks == 1;
        punctured += std::size_t(marks);
        if (f.vertices() == 0) throw DomainError("a complementary region has no cusps");
        if (!f.punctured && f.vertices() < 3)
            throw DomainError("unpunctured complementary region with " + std::to_string(f.vertices()) + " cusps");
    }
    if (punctured != puncture_markers.size()) throw DomainError("puncture marker on an unknown branch side");
    if (punctured != std::size_t(n + 1))
        throw DomainError("expected " + std::to_string(n + 1) + " punctured regions, found " +
                          std::to_string(punctured));
    for (int p : parameters)
        if (p < 0 || std::size_t(p) >= branches.size()) throw DomainError("parameter is not a branch");
    for (const auto& [name, ann] : annotations)
        for (const auto& p : ann.paths) check_smooth(*this, p);
}

void check_smooth(const TrainTrack& t, const TrainPath& p) {
    for (const auto& s : p)
        if (s.branch < 0 || std::size_t(s.branch) >= t.branches.size() || (s.dir != 1 && s.dir != -1))
            throw DomainError("train path step is not a branch");
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        const EndLocation& in = t.branches[std::size_t(p[i].branch)].at(p[i].dir > 0 ? End::To : End::From);
        const EndLocation& out =
            t.branches[std::size_t(p[i + 1].branch)].at(p[i + 1].dir > 0 ? End::From : End::To);
        if (in.sw != out.sw || in.side == out.side)
            throw DomainError("train path is not smooth at step " + std::to_string(i + 1) + " (" +
                              render_path(t, p) + ")");
    }
}

TrainPath parse_path(const TrainTrack& t, const std::vector<std::string>& tokens) {
    TrainPath p;
    for (const auto& tok : tokens) {
        if (tok.empty()) throw ParseError("empty path token");
        bool neg = tok[0] == '-';
        std::string id = (neg || tok[0] == '+') ? tok.substr(1) : tok;
        p.push_back(Step{t.branch_index(id), neg ? -1 : 1});
    }
    return p;
}

std::string render_path(const TrainTrack& t, const TrainPath& p) {
    std::string s;
    for (const auto& st : p) {
        if (!s.empty()) s += ' ';
        if (st.dir < 0) s += '-';
        s += t.branches[std::size_t(st.branch)].id;
    }
    return s;
}

namespace {

HalfRef parse_halfref(const std::map<std::string, int>& ids, const std::string& s) {
    auto dot = s.rfind('.');
    if (dot == std::string::npos) throw ParseError("half-branch reference '" + s + "' must be id.from or id.to");
    std::string id = s.substr(0, dot), end = s.substr(dot + 1);
    auto it = ids.find(id);
    if (it == ids.end()) throw ParseError("half-branch reference to unknown branch '" + id + "'");
    if (end == "from") return HalfRef{it->second, End::From};
    if (end == "to") return HalfRef{it->second, End::To};
    throw ParseError("half-branch reference '" + s + "' must end in .from or .to");
}

Side parse_side(const json& j) {
    std::string s = j.get<std::string>();
    if (s == "A") return Side::A;
    if (s == "B") return Side::B;
    throw ParseError("switch side must be \"A\" or \"B\"");
}

BranchSide parse_branch_side(const TrainTrack& t, const std::string& s) {
    auto colon = s.rfind(':');
    if (colon == std::string::npos) throw ParseError("polygon side must be branch:left or branch:right");
    std::string which = s.substr(colon + 1);
    if (which != "left" && which != "right") throw ParseError("polygon side must be branch:left or branch:right");
    return BranchSide{t.branch_index(s.substr(0, colon)), which == "left"};
}

struct DeclaredPolygon {
    bool punctured;
    int vertices;
    std::optional<BranchSide> side;
};

// Match declared polygons to traced faces and return one marker side per punctured face.
std::set<BranchSide> assign_punctures(const TrainTrack& t, const std::vector<Face>& faces,
                                      const std::vector<DeclaredPolygon>& decl) {
    if (decl.size() != faces.size())
        throw DomainError("declared " + std::to_string(decl.size()) + " polygons but the track has " +
                          std::to_string(faces.size()) + " complementary regions");
    std::vector<int> owner(faces.size(), -1);
    std::set<BranchSide> markers;
    auto marker_of = [&](std::size_t f) {
        const Step& s = faces[f].steps.front();
        return BranchSide{s.branch, s.dir > 0};
    };
    std::vector<std::size_t> open;
    for (std::size_t d = 0; d < decl.size(); ++d) {
        if (!decl[d].side) {
            open.push_back(d);
            continue;
        }
        std::size_t f = faces.size();
        for (std::size_t k = 0; k < faces.size(); ++k)
            if (faces[k].contains(*decl[d].side)) f = k;
        if (f == faces.size()) throw DomainError("polygon side does not bound any region");
        if (owner[f] >= 0) throw DomainError("two polygons pinned to the same region");
        if (faces[f].vertices() != decl[d].vertices)
            throw DomainError("pinned polygon declares " + std::to_string(decl[d].vertices) +
                              " vertices but its region has " + std::to_string(faces[f].vertices()));
        owner[f] = int(d);
        if (decl[d].punctured) markers.insert(*decl[d].side);
    }
    std::map<int, std::vector<std::size_t>> free_faces, free_decl;
    for (std::size_t f = 0; f < faces.size(); ++f)
        if (owner[f] < 0) free_faces[faces[f].vertices()].push_back(f);
    for (std::size_t d : open) free_decl[decl[d].vertices].push_back(d);
    for (const auto& [p, ds] : free_decl) {
        auto& fs = free_faces[p];
        if (fs.size() != ds.size())
            throw DomainError("declared polygons do not match the traced regions (" + std::to_string(p) + "-gons)");
        std::size_t np = 0;
        for (std::size_t d : ds) np += decl[d].punctured;
        if (np != 0 && np != ds.size())
            throw DomainError("ambiguous puncture assignment among " + std::to_string(p) +
                              "-gons; pin them with \"side\"");
        if (np)
            for (std::size_t f : fs) markers.insert(marker_of(f));
        fs.clear();
    }
    for (const auto& [p, fs] : free_faces)
        if (!fs.empty()) throw DomainError("declared polygons do not match the traced regions");
    (void)t;
    return markers;
}

mpq_class json_rational(const json& j) {
    if (j.is_number_integer()) return mpq_class(j.get<long>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number()) return parse_rational(j.dump());
    throw ParseError("expected a number or rational string");
}

}  // namespace

TrainTrack load_track(const json& doc) {
    if (!doc.is_object()) throw ParseError("train track document must be an object");
    for (const char* key : {"n", "switches", "branches"})
        if (!doc.contains(key)) throw ParseError(std::string("train track document lacks \"") + key + "\"");
    TrainTrack t;
    t.n = doc.at("n").get<int>();
    std::map<std::string, int> bids, sids;
    for (const auto& b : doc.at("branches")) {
        Branch br;
        br.id = b.at("id").get<std::string>();
        std::string kind = b.value("kind", "main");
        if (kind != "main" && kind != "infinitesimal") throw ParseError("branch kind must be main or infinitesimal");
        br.main = kind == "main";
        if (!bids.emplace(br.id, int(t.branches.size())).second) throw ParseError("duplicate branch id " + br.id);
        t.branches.push_back(br);
    }
    for (const auto& s : doc.at("switches")) {
        Switch sw;
        sw.id = s.at("id").get<std::string>();
        if (!sids.emplace(sw.id, int(t.switches.size())).second) throw ParseError("duplicate switch id " + sw.id);
        for (const auto& r : s.at("sideA")) sw.side(Side::A).push_back(parse_halfref(bids, r.get<std::string>()));
        for (const auto& r : s.at("sideB")) sw.side(Side::B).push_back(parse_halfref(bids, r.get<std::string>()));
        t.switches.push_back(sw);
    }
    locate_ends(t.switches, t.branches);
    for (const auto& b : doc.at("branches")) {
        const Branch& br = t.branches[std::size_t(bids.at(b.at("id").get<std::string>()))];
        for (auto [key, end] : {std::pair{"from", End::From}, std::pair{"to", End::To}}) {
            if (!b.contains(key)) continue;
            const auto& e = b.at(key);
            auto it = sids.find(e.at("switch").get<std::string>());
            if (it == sids.end()) throw ParseError("branch " + br.id + " names an unknown switch");
            if (br.at(end).sw != it->second || (e.contains("side") && br.at(end).side != parse_side(e.at("side"))))
                throw ParseError("branch " + br.id + " " + key + " end disagrees with the switch lists");
        }
    }
    if (doc.contains("parameters"))
        for (const auto& p : doc.at("parameters")) t.parameters.push_back(t.branch_index(p.get<std::string>()));

    if (doc.contains("annotations"))
        for (const auto& [name, a] : doc.at("annotations").items()) {
            ArcAnnotation ann;
            if (a.contains("counts"))
                for (const auto& [id, c] : a.at("counts").items()) ann.counts[t.branch_index(id)] = c.get<long>();
            if (a.contains("paths"))
                for (const auto& p : a.at("paths")) {
                    std::vector<std::string> toks;
                    if (p.is_string()) {
                        std::istringstream in(p.get<std::string>());
                        for (std::string tok; in >> tok;) toks.push_back(tok);
                    } else {
                        for (const auto& tok : p) toks.push_back(tok.get<std::string>());
                    }
                    ann.paths.push_back(parse_path(t, toks));
                }
            for (const auto& p : ann.paths) {
                std::set<std::pair<int, int>> seen;
                for (const auto& s : p)
                    if (!seen.insert({s.branch, s.dir}).second)
                        throw DomainError("path of " + name + " repeats a branch with the same orientation");
            }
            for (std::size_t i = 0; i < ann.paths.size(); ++i)
                for (std::size_t j = 0; j < ann.paths.size(); ++j) {
                    const auto& a1 = ann.paths[i];
                    const auto& a2 = ann.paths[j];
                    if (i == j || a1.size() > a2.size()) continue;
                    if (std::search(a2.begin(), a2.end(), a1.begin(), a1.end()) != a2.end())
                        throw DomainError("path list of " + name + " is not minimal");
                }
            t.annotations[name] = std::move(ann);
        }

    auto faces = trace_faces(t.switches, t.branches);
    if (doc.contains("polygons")) {
        std::vector<DeclaredPolygon> decl;
        for (const auto& p : doc.at("polygons")) {
            DeclaredPolygon d{p.at("punctured").get<bool>(), p.at("vertices").get<int>(), std::nullopt};
            if (p.contains("side")) d.side = parse_branch_side(t, p.at("side").get<std::string>());
            decl.push_back(d);
        }
        t.puncture_markers = assign_punctures(t, faces, decl);
    } else {
        // Regions with fewer than three cusps must be punctured; accept only if that accounts for all.
        for (const auto& f : faces)
            if (f.vertices() < 3 && f.vertices() > 0)
                t.puncture_markers.insert(BranchSide{f.steps.front().branch, f.steps.front().dir > 0});
        if (t.puncture_markers.size() != std::size_t(t.n + 1))
            throw DomainError("cannot infer punctured regions; declare \"polygons\"");
    }
    t.rebuild();
    return t;
}

TrainTrack load_track_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return load_track(doc);
}

json to_json(const TrainTrack& t) {
    auto ref = [&](const HalfRef& h) {
        return t.branches[std::size_t(h.branch)].id + (h.end == End::From ? ".from" : ".to");
    };
    json doc;
    doc["n"] = t.n;
    json sws = json::array();
    for (const auto& sw : t.switches) {
        json a = json::array(), b = json::array();
        for (const auto& h : sw.side(Side::A)) a.push_back(ref(h));
        for (const auto& h : sw.side(Side::B)) b.push_back(ref(h));
        sws.push_back({{"id", sw.id}, {"sideA", a}, {"sideB", b}});
    }
    doc["switches"] = sws;
    json brs = json::array();
    for (const auto& br : t.branches) {
        auto end = [&](End e) {
            const auto& loc = br.at(e);
            return json{{"switch", t.switches[std::size_t(loc.sw)].id}, {"side", loc.side == Side::A ? "A" : "B"}};
        };
        brs.push_back({{"id", br.id}, {"kind", br.main ? "main" : "infinitesimal"}, {"from", end(End::From)},
                       {"to", end(End::To)}});
    }
    doc["branches"] = brs;
    json polys = json::array();
    for (const auto& f : t.faces) {
        json p{{"punctured", f.punctured}, {"vertices", f.vertices()}};
        const Step& s = f.steps.front();
        p["side"] = t.branches[std::size_t(s.branch)].id + (s.dir > 0 ? ":left" : ":right");
        polys.push_back(p);
    }
    doc["polygons"] = polys;
    if (!t.parameters.empty()) {
        json ps = json::array();
        for (int p : t.parameters) ps.push_back(t.branches[std::size_t(p)].id);
        doc["parameters"] = ps;
    }
    if (!t.annotations.empty()) {
        json anns;
        for (const auto& [name, a] : t.annotations) {
            json counts = json::object();
            for (const auto& [b, c] : a.counts) counts[t.branches[std::size_t(b)].id] = c;
            json paths = json::array();
            for (const auto& p : a.paths) {
                json toks = json::array();
                for (const auto& s : p) toks.push_back((s.dir < 0 ? "-" : "") + t.branches[std::size_t(s.branch)].id);
                paths.push_back(toks);
            }
            anns[name] = {{"counts", counts}, {"paths", paths}};
        }
        doc["annotations"] = anns;
    }
    return doc;
}

std::vector<mpq_class> parse_measure(const TrainTrack& t, const json& doc) {
    if (!doc.is_object()) throw ParseError("measure must be an object mapping branch ids to weights");
    std::vector<std::optional<mpq_class>> w(t.branches.size());
    for (const auto& [id, v] : doc.items()) w[std::size_t(t.branch_index(id))] = json_rational(v);
    std::vector<mpq_class> mu;
    bool all = std::all_of(w.begin(), w.end(), [](const auto& x) { return x.has_value(); });
    if (all) {
        for (auto& x : w) mu.push_back(*x);
        return mu;
    }
    // Otherwise the given weights must be exactly the parameters.
    std::vector<mpq_class> vals;
    for (int p : t.parameter_branches()) {
        if (!w[std::size_t(p)]) throw DomainError("measure lacks branch " + t.branches[std::size_t(p)].id);
        vals.push_back(*w[std::size_t(p)]);
    }
    mu = measure_from_parameters(t, vals);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] && *w[i] != mu[i]) throw DomainError("measure violates the switch conditions");
    return mu;
}

}  // namespace dyn
