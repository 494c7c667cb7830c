#include "dynnikov/cli.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "dynnikov/json_io.hpp"
#include "dynnikov/spectral.hpp"
#include "dynnikov/traintrack.hpp"
#include "dynnikov/update_rules.hpp"

namespace dyn {

using nlohmann::json;

void RunConfig::validate() const {
    iteration().validate();
    if (digits <= 0 || digits > 2000) throw DomainError("--digits must be in 1..2000");
    if (jobs <= 0) throw DomainError("--jobs must be positive");
}

IterationOptions RunConfig::iteration() const {
    IterationOptions o;
    o.ladder = ladder;
    o.tol = tol;
    o.max_iters = max_iters;
    o.probe_radius = probe_radius;
    o.axis_factor = axis_factor;
    o.random_factor = random_factor;
    o.seed = seed;
    return o;
}

namespace {

int exit_code_of(const std::exception_ptr& e) {
    try {
        std::rethrow_exception(e);
    } catch (const NonConvergence&) {
        return kNonConvergence;
    } catch (const NoDominantRealRoot&) {
        return kNonConvergence;
    } catch (const VerificationFailed&) {
        return kVerificationFailed;
    } catch (const Error&) {
        return kUsage;
    } catch (const CLI::ParseError&) {
        return kUsage;
    } catch (...) {
        return kFailure;
    }
}

double log_of(const mpf_class& x) {
    long e = 0;
    double m = mpf_get_d_2exp(&e, x.get_mpf_t());
    return std::log(m) + double(e) * std::log(2.0);
}

json lambda_json(const mpf_class& lambda, int digits) {
    return json{{"lambda", to_string(lambda, digits)}, {"log_lambda", log_of(lambda)}};
}

}  // namespace

json analyse_braid(const BraidWord& w, const RunConfig& cfg) {
    json rec{{"n", w.strands()}, {"word", w.render()}};
    try {
        auto opts = cfg.iteration();
        auto u = find_unstable_direction(w, opts);
        auto ms = dynnikov_matrices(w, u, opts);
        if (ms.empty()) throw VerificationFailed("no Dynnikov matrix survived verification");
        rec.update(lambda_json(dilatation(ms.front().matrix, cfg.digits + 5), cfg.digits));
        rec["direction"] = to_json(u.point, cfg.digits);
        rec["iterations"] = u.iterations;
        rec["precision"] = u.precision;
        json mats = json::array();
        for (const auto& m : ms) mats.push_back(to_json(m));
        rec["matrices"] = std::move(mats);
    } catch (...) {
        auto e = std::current_exception();
        rec["exit"] = exit_code_of(e);
        try {
            std::rethrow_exception(e);
        } catch (const std::exception& ex) {
            rec["error"] = ex.what();
        }
    }
    return rec;
}

std::vector<json> run_batch(const std::vector<BraidWord>& braids, const RunConfig& cfg) {
    std::vector<json> out(braids.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < braids.size(); i = next++) {
            out[i] = analyse_braid(braids[i], cfg);
            out[i]["index"] = i;
        }
    };
    std::size_t k = std::min<std::size_t>(std::size_t(cfg.jobs), std::max<std::size_t>(braids.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < k; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

namespace {

struct BraidSource {
    int n = 0;
    std::string word;
    std::string file;
    bool word_given = false;

    BraidWord resolve() const {
        if (!file.empty()) {
            if (word_given) throw ParseError("give either a word or a braid file, not both");
            auto all = parse_braid_file(read_text_file(file));
            if (all.empty()) throw ParseError(file + " contains no braid");
            if (n && all.front().strands() != n) throw ParseError("-n disagrees with the braid file");
            return all.front();
        }
        if (!n) throw ParseError("-n is required with an inline word");
        return parse_braid(word, n);
    }
};

void add_braid_options(CLI::App* cmd, BraidSource& src) {
    cmd->add_option("-n,--strands", src.n, "number of strands")->check(CLI::Range(3, 10000));
    cmd->add_option("-w,--word", src.word, "signed generator indices, e.g. \"1 -2\"")
        ->each([&src](const std::string&) { src.word_given = true; });
    cmd->add_option("--braid-file", src.file, "take the first braid of a braid file");
}

std::vector<unsigned> parse_ladder(const std::string& s) {
    std::vector<unsigned> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw ParseError("bad precision '" + tok + "'");
        }
        if (used != tok.size() || v <= 0) throw ParseError("bad precision '" + tok + "'");
        out.push_back(unsigned(v));
    }
    return out;
}

// CLI11 reads "-3 2 -1" as an option cluster, so values of -w and -v are glued to their flag.
std::vector<std::string> normalise_args(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        std::string a = argv[i];
        if ((a == "-w" || a == "--word" || a == "-v" || a == "--vector") && i + 1 < argc) {
            std::string name = (a == "-w" || a == "--word") ? "--word=" : "--vector=";
            std::string v = argv[++i];
            // An empty value after '=' makes CLI11 consume the next argument instead.
            args.push_back(name + (v.empty() ? std::string(" ") : v));
        } else {
            args.push_back(a);
        }
    }
    return args;
}

void emit_text(std::ostream& out, const json& j, const std::string& prefix = "") {
    if (!j.is_object()) {
        out << (prefix.empty() ? "" : prefix + ": ") << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
        return;
    }
    for (const auto& [k, v] : j.items()) {
        std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object()) emit_text(out, v, key);
        else out << key << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

std::string svg_regions(const std::vector<Arc>& arcs) {
    static const char* colours[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d"};
    std::ostringstream s;
    const double cx = 260, cy = 260, r = 160;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" height=\"520\" font-family=\"monospace\" "
         "font-size=\"11\">\n";
    s << "<line x1=\"60\" y1=\"260\" x2=\"460\" y2=\"260\" stroke=\"#bbb\"/>"
      << "<line x1=\"260\" y1=\"60\" x2=\"260\" y2=\"460\" stroke=\"#bbb\"/>\n"
      << "<text x=\"465\" y=\"264\">a</text><text x=\"256\" y=\"52\">b</text>\n";
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        const auto& a = arcs[i];
        const char* c = colours[i % 7];
        if (a.full_circle) {
            s << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << r << "\" fill=\"none\" stroke=\"" << c
              << "\" stroke-width=\"8\"/>\n";
            s << "<text x=\"" << cx - 40 << "\" y=\"" << cy << "\">" << format_matrix(a.matrix) << "</text>\n";
            continue;
        }
        double sweep = a.end - a.start;
        if (sweep <= 0) sweep += 2 * M_PI;
        double x0 = cx + r * std::cos(a.start), y0 = cy - r * std::sin(a.start);
        double x1 = cx + r * std::cos(a.end), y1 = cy - r * std::sin(a.end);
        s << "<path d=\"M " << x0 << " " << y0 << " A " << r << " " << r << " 0 " << (sweep > M_PI ? 1 : 0)
          << " 0 " << x1 << " " << y1 << "\" fill=\"none\" stroke=\"" << c << "\" stroke-width=\"8\"/>\n";
        double mid = a.start + sweep / 2;
        double lx = cx + (r + 40) * std::cos(mid) - 40, ly = cy - (r + 40) * std::sin(mid);
        s << "<text x=\"" << lx << "\" y=\"" << ly << "\" fill=\"" << c << "\">" << format_matrix(a.matrix)
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

json load_measure_arg(const TrainTrack& t, const std::string& arg) {
    json doc;
    std::ifstream probe(arg);
    if (probe) doc = read_json_file(arg);
    else {
        try {
            doc = json::parse(arg);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("measure is neither a file nor JSON: ") + e.what());
        }
    }
    json out = json::array();
    for (const auto& q : parse_measure(t, doc)) out.push_back(q.get_str());
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dynnikov coordinates, Dynnikov matrices and train-track spectra of braids", "dynnikov"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    RunConfig cfg;
    std::string ladder_text, format = "json", mode_text = "exact";

    auto add_config = [&](CLI::App* cmd, bool iteration) {
        cmd->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
        cmd->add_option("--digits", cfg.digits, "significant digits for real output");
        if (!iteration) return;
        cmd->add_option("--precision", ladder_text, "mantissa-bit ladder, e.g. 53,128,256");
        cmd->add_option("--tol", cfg.tol, "convergence tolerance (overrides the per-rung default)");
        cmd->add_option("--max-iters", cfg.max_iters, "iterations per rung");
        cmd->add_option("--radius", cfg.probe_radius, "probe radius relative to the fixed direction");
        cmd->add_option("--seed", cfg.seed, "seed for the start vector and random probes");
    };

    BraidSource src;
    std::string vector_text;

    auto* act = app.add_subcommand("act", "apply a braid to Dynnikov coordinates (exact)");
    add_braid_options(act, src);
    act->add_option("-v,--vector", vector_text, "coordinates (a_1..a_k, b_1..b_k)")->required();
    add_config(act, false);

    auto* matrix = app.add_subcommand("matrix", "Dynnikov matrices at the unstable direction");
    add_braid_options(matrix, src);
    bool with_stable = false;
    matrix->add_flag("--stable", with_stable, "also report the stable direction");
    add_config(matrix, true);

    auto* dil = app.add_subcommand("dilatation", "dilatation of a pseudo-Anosov braid");
    add_braid_options(dil, src);
    add_config(dil, true);

    auto* cmp = app.add_subcommand("compare", "compare spectra of a Dynnikov matrix and a transition matrix");
    add_braid_options(cmp, src);
    std::string d_file, t_file;
    cmp->add_option("-d,--dynnikov", d_file, "Dynnikov matrix JSON (instead of a braid)");
    cmp->add_option("-t,--transition", t_file, "transition matrix JSON")->required();
    cmp->add_option("--mode", mode_text, "exact | roots_of_unity_and_zeros | eigenvalues_one");
    add_config(cmp, true);

    auto* reg = app.add_subcommand("regions3", "decompose the circle of directions for a 3-braid");
    add_braid_options(reg, src);
    int grid = 2048, depth = 48;
    std::string svg;
    reg->add_option("--grid", grid, "grid points on the boundary square")->check(CLI::Range(8, 1 << 20));
    reg->add_option("--depth", depth, "bisection depth")->check(CLI::Range(1, 200));
    reg->add_option("--svg", svg, "write an SVG plot here");
    add_config(reg, false);

    auto* track = app.add_subcommand("track", "train-track operations");
    track->require_subcommand(1);
    std::vector<std::string> files;
    auto* pf = track->add_subcommand("pf", "Perron-Frobenius data of a transition matrix");
    pf->add_option("file", files, "transition matrix JSON")->required()->expected(1);
    add_config(pf, false);
    auto* pinch = track->add_subcommand("pinch", "pinch a region (default: until complete)");
    pinch->add_option("file", files, "train track JSON")->required()->expected(1);
    int face = -1, edge = 1;
    pinch->add_option("--face", face, "region index");
    pinch->add_option("--edge", edge, "edge index within the region, 1-based");
    add_config(pinch, false);
    auto* extend = track->add_subcommand("extend", "complete diagonal extensions");
    extend->add_option("file", files, "train track JSON")->required()->expected(1);
    bool list = false;
    extend->add_flag("--list", list, "print every extension");
    add_config(extend, false);
    auto* coords = track->add_subcommand("coords", "Dynnikov coordinates of a measure on a track");
    coords->add_option("file", files, "train track JSON")->required()->expected(1);
    std::string measure_arg;
    coords->add_option("-m,--measure", measure_arg, "measure: JSON file or inline JSON")->required();
    add_config(coords, false);
    auto* conj = track->add_subcommand("conjugacy", "check D L = L T' (null entries of T' are solved for)");
    conj->add_option("files", files, "D.json L.json Tp.json")->required()->expected(3);
    add_config(conj, false);

    auto* batch = app.add_subcommand("batch", "analyse every braid of a file, one JSON record per line");
    std::string batch_file;
    batch->add_option("file", batch_file, "braid file")->required();
    batch->add_option("--jobs", cfg.jobs, "worker threads");
    add_config(batch, true);

    try {
        auto args = normalise_args(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(args);
        if (!ladder_text.empty()) cfg.ladder = parse_ladder(ladder_text);
        cfg.json = format == "json";
        cfg.validate();

        json result;
        int code = kOk;

        if (*act) {
            auto w = src.resolve();
            auto flat = parse_vector_text(vector_text);
            auto v = make_vector<mpq_class>(w.strands(), flat);
            auto r = apply_braid(v, w);
            if (!cfg.json) {
                out << "(";
                for (std::size_t i = 0; i < r.x.size(); ++i) out << (i ? ", " : "") << r.x[i].get_str();
                out << ")\n";
                return kOk;
            }
            result = json{{"n", w.strands()}, {"word", w.render()}, {"vector", to_json(r)}};
        } else if (*matrix) {
            auto w = src.resolve();
            result = analyse_braid(w, cfg);
            if (result.contains("error")) {
                err << "error: " << result["error"].get<std::string>() << "\n";
                return result["exit"].get<int>();
            }
            if (with_stable) {
                auto s = stable_direction(w, cfg.iteration());
                result["stable_direction"] = to_json(s.point, cfg.digits);
            }
            if (!cfg.json) {
                out << "lambda: " << result["lambda"].get<std::string>() << "\n";
                out << "log_lambda: " << result["log_lambda"].dump() << "\n";
                for (const auto& m : result["matrices"]) out << format_matrix(load_int_matrix(m["matrix"])) << "\n";
                return kOk;
            }
        } else if (*dil) {
            auto w = src.resolve();
            auto rec = analyse_braid(w, cfg);
            if (rec.contains("error")) {
                err << "error: " << rec["error"].get<std::string>() << "\n";
                return rec["exit"].get<int>();
            }
            if (!cfg.json) {
                out << rec["lambda"].get<std::string>() << "\n";
                return kOk;
            }
            result = json{{"n", w.strands()}, {"word", w.render()}, {"lambda", rec["lambda"]},
                          {"log_lambda", rec["log_lambda"]}};
        } else if (*cmp) {
            IntMatrix d;
            if (!d_file.empty()) {
                if (src.word_given || !src.file.empty()) throw ParseError("give either -d or a braid, not both");
                d = load_int_matrix(read_json_file(d_file));
            } else {
                auto ms = dynnikov_matrices(src.resolve(), cfg.iteration());
                if (ms.empty()) throw VerificationFailed("no Dynnikov matrix survived verification");
                d = ms.front().matrix;
            }
            auto t = load_transition(read_json_file(t_file));
            auto rep = isospectral_up_to(d, t.main_block(), parse_strip_mode(mode_text));
            result = to_json(rep);
            result["dynnikov"] = to_json(d);
            result["transition"] = to_json(t.main_block());
            if (!rep.isospectral) code = kVerificationFailed;
        } else if (*reg) {
            auto w = src.resolve();
            if (w.strands() != 3) throw DomainError("regions3 needs a 3-strand braid");
            auto arcs = enumerate_regions_n3(w, grid, depth);
            json a = json::array();
            for (const auto& arc : arcs) a.push_back(to_json(arc));
            result = json{{"word", w.render()}, {"arcs", a}};
            if (!svg.empty()) {
                std::ofstream f(svg);
                if (!f) throw ParseError("cannot write " + svg);
                f << svg_regions(arcs);
            }
        } else if (*pf) {
            auto t = load_transition(read_json_file(files.at(0)));
            auto p = transition_pf(t);
            json v = json::array();
            for (const auto& e : p.vector) v.push_back(to_string(e, cfg.digits));
            result = json{{"lambda", to_string(p.lambda, cfg.digits)}, {"vector", v}};
        } else if (*pinch) {
            auto t = load_track_file(files.at(0));
            MoveResult r;
            if (face < 0) {
                r = pinch_to_complete(t);
            } else {
                if (std::size_t(face) >= t.faces.size()) throw DomainError("no such region");
                r = t.faces[std::size_t(face)].punctured ? pinch_punctured(t, std::size_t(face), edge)
                                                          : pinch_unpunctured(t, std::size_t(face), edge);
            }
            result = json{{"track", to_json(r.track)}, {"psi", to_json(r.psi)}, {"rank", r.track.rank()},
                          {"complete", r.track.complete()}};
        } else if (*extend) {
            auto t = load_track_file(files.at(0));
            auto exts = enumerate_diagonal_extensions(t);
            result = json{{"count", exts.size()}, {"formula", diagonal_extensions_count(t).get_str()}};
            if (list) {
                json all = json::array();
                for (const auto& e : exts) all.push_back(json{{"track", to_json(e.track)}, {"psi", to_json(e.psi)}});
                result["extensions"] = all;
            }
        } else if (*coords) {
            auto t = load_track_file(files.at(0));
            json mj = load_measure_arg(t, measure_arg);
            std::vector<mpq_class> mu;
            for (const auto& e : mj) mu.push_back(json_rational(e));
            json arcs = json::object();
            for (const auto& [name, ann] : t.annotations) arcs[name] = arc_measure(t, name, mu).get_str();
            result = json{{"measure", mj}, {"arcs", arcs}, {"dynnikov", to_json(change_of_coords(t, mu))}};
            try {
                result["L"] = to_json(linearize_change_of_coords(t, mu));
            } catch (const TieAtBasepoint& e) {
                result["L"] = nullptr;
                result["note"] = e.what();
            }
        } else if (*conj) {
            auto d = load_int_matrix(read_json_file(files.at(0)));
            auto l = load_rat_matrix(read_json_file(files.at(1)));
            auto partial = load_partial_matrix(read_json_file(files.at(2)));
            RatMatrix tp = solve_completion(d, l, partial);
            IntMatrix tpi(tp.rows(), tp.cols());
            bool integral = true;
            for (std::size_t i = 0; i < tp.rows(); ++i)
                for (std::size_t j = 0; j < tp.cols(); ++j) {
                    integral &= tp(i, j).get_den() == 1;
                    tpi(i, j) = tp(i, j).get_num();
                }
            bool ok = integral && verify_conjugacy(d, l, tpi);
            result = json{{"conjugate", ok}, {"Tp", to_json(tp)}};
            if (!ok) code = kVerificationFailed;
        } else if (*batch) {
            auto braids = parse_braid_file(read_text_file(batch_file));
            for (const auto& rec : run_batch(braids, cfg)) out << rec.dump() << "\n";
            return kOk;
        }

        if (cfg.json) out << result.dump(2) << "\n";
        else emit_text(out, result);
        return code;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << "run with --help for usage\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_of(std::current_exception());
    }
}

}  // namespace dyn
