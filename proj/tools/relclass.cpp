#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "relclass/report.hpp"

using namespace relclass;

namespace {

struct Options {
    std::string corpus;
    std::vector<std::string> checks;
    std::vector<double> grid = kDefaultGrid;
    i64 X = kMaxTruncation;
    i64 pmax = 10000;
    long long budget = 1000000;
    std::uint64_t seed = 20240601;
    bool csv = false;
    std::string strategy = "heuristic";
    int n = 1;
    i64 m = 1;
    std::string delta = "-5,0";
};

struct Entry {
    int line = 0;
    int n = 1;
    i64 m = 1, da = 0, db = 0;
    std::optional<int> hK, t;
};

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

i64 parse_int(const std::string& s, int line) {
    try {
        size_t pos;
        i64 v = std::stoll(trim(s), &pos);
        if (pos != trim(s).size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw PreconditionFailed("corpus line " + std::to_string(line) + ": bad integer '" + s + "'");
    }
}

std::vector<Entry> read_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionFailed("cannot open corpus " + path);
    std::vector<Entry> out;
    std::string raw;
    int ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string s = trim(raw.substr(0, raw.find('#')));
        if (s.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) f.push_back(tok);
        if (f.size() != 4 && f.size() != 6)
            throw PreconditionFailed("corpus line " + std::to_string(ln) + ": expected n,m,delta_a,delta_b[,hK,t]");
        Entry e;
        e.line = ln;
        e.n = (int)parse_int(f[0], ln);
        e.m = parse_int(f[1], ln);
        e.da = parse_int(f[2], ln);
        e.db = parse_int(f[3], ln);
        if (f.size() == 6) {
            e.hK = (int)parse_int(f[4], ln);
            e.t = (int)parse_int(f[5], ln);
        }
        out.push_back(e);
    }
    return out;
}

class Fields {
public:
    explicit Fields(long long budget) : budget_(budget) {}
    const Field& get(int n, i64 m) {
        auto key = std::make_pair(n, n == 1 ? 0 : m);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
        auto F = std::make_shared<Field>(make_field(n, m));
        F->budget = budget_;
        return *cache_.emplace(key, F).first->second;
    }

private:
    long long budget_;
    std::map<std::pair<int, i64>, std::shared_ptr<Field>> cache_;
};

CMField build(Fields& fs, const Entry& e, long long budget) {
    const Field& F = fs.get(e.n, e.m);
    CMField K = make_cm(F, F.elem(e.da, e.db));
    K.budget = budget;
    return K;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string csv_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

// ---- field / classify ----

int cmd_field(const Options& o) {
    Field F = make_field(o.n, o.m);
    emit(field_report(F));
    return 0;
}

int cmd_classify(const Options& o) {
    auto comma = o.delta.find(',');
    Entry e;
    e.n = o.n;
    e.m = o.m;
    e.da = parse_int(o.delta.substr(0, comma), 0);
    e.db = comma == std::string::npos ? 0 : parse_int(o.delta.substr(comma + 1), 0);
    Fields fs(o.budget);
    CMField K = build(fs, e, o.budget);
    emit(classification_report(K, classify(K)));
    return 0;
}

// ---- verify ----

const std::vector<std::string> kAllChecks = {"regression", "genus", "disc", "bijection", "vsum",
                                             "splitprimes", "normcount", "boxes", "measure"};

struct Outcome {
    std::string status;  // ok, fail, skipped
    std::string detail;
};

Outcome run_check(const std::string& name, const CMField& K, const Entry& e, const Options& o,
                  std::mt19937_64& rng) {
    const Field& F = K.F;
    auto skip = [](const std::string& why) { return Outcome{"skipped", why}; };
    auto res = [](bool ok, const std::string& d) { return Outcome{ok ? "ok" : "fail", d}; };
    if (name == "regression") {
        if (!e.hK) return skip("no expected values");
        auto g = lower_bound_t(K);
        bool ok = K.hK == *e.hK && g.t == *e.t;
        return res(ok, "hK " + std::to_string(K.hK) + " expected " + std::to_string(*e.hK) + ", t " +
                           std::to_string(g.t) + " expected " + std::to_string(*e.t));
    }
    if (name == "genus") {
        auto g = lower_bound_t(K);
        return res(g.ok, "t=" + std::to_string(g.t) + " bound " + g.bound.str() + " <= hK " + std::to_string(g.hK));
    }
    if (name == "disc") {
        std::string d;
        bool ok = true;
        for (auto& [P, v] : F.factor_ideal(K.rel_disc)) {
            bool good = P.p == 2 ? v <= 2 * P.e + 1 : v == 1;
            ok &= good;
            d += (d.empty() ? "" : " ") + std::to_string(P.norm()) + ":" + std::to_string(v);
        }
        return res(ok, d);
    }
    if (name == "bijection") {
        auto C = classify(K);
        bool ok = (int)C.weak.size() == K.orbits && C.weak.size() <= (size_t)K.hK && (size_t)K.hK <= 2 * C.weak.size();
        return res(ok, "weak " + std::to_string(C.weak.size()) + ", orbits " + std::to_string(K.orbits) + ", hK " +
                           std::to_string(K.hK));
    }
    if (name == "vsum") {
        auto v = vsum_check(K, o.X);
        return res(v.ok, v.partial_sum.str() + " <= " + std::to_string(v.h));
    }
    if (name == "splitprimes") {
        try {
            auto bp = bound_params(K, false);
            return res(bp.lemma1 && bp.lemma2 && bp.lemma3,
                       "split<V " + std::to_string(bp.split_below_V) + ", split<U " + std::to_string(bp.split_below_U) +
                           ", R " + std::to_string(bp.R));
        } catch (const AssumptionViolated& ex) {
            return skip(ex.what());
        }
    }
    if (!K.unit_equal && (name == "normcount" || name == "measure")) return skip("extra units");
    if (name == "normcount") {
        auto L = lattice_constants(F);
        std::uniform_int_distribution<int> top(1, 60), den(1, 4);
        int n = 0;
        bool ok = true;
        for (auto& N : K.N_reps) {
            for (int k = 0; k < 2; ++k, ++n) {
                int a = top(rng), b = den(rng);
                ok &= norm_count_K(K, N, Rat(a, b), L).ok;
            }
        }
        for (auto& a : F.class_reps) {
            int x = top(rng), y = den(rng);
            ok &= norm_count_F(F, a, Rat(x, y), L).ok;
            ++n;
        }
        return res(ok, std::to_string(n) + " samples");
    }
    if (name == "boxes") {
        auto L = lattice_constants(F);
        std::uniform_real_distribution<double> ux(-20, 20), uc(0.5, 12);
        double T0 = hi(L.T0);
        int bad = 0;
        for (int k = 0; k < 10; ++k) {
            const FIdeal& a = F.class_reps[k % F.class_reps.size()];
            BoxSpec b{a, {}, {}};
            double prod = 1;
            for (int j = 0; j < F.n(); ++j) {
                b.x0.push_back(ux(rng));
                b.c.push_back(uc(rng));
                prod *= b.c.back();
            }
            double need = T0 * a.norm().to_double();
            if (prod < need) b.c[0] *= 1.0001 * need / prod;
            bad += !box_bound_check(F, b, L).ok;
        }
        return res(bad == 0, std::to_string(bad) + " violations in 10 boxes");
    }
    if (name == "measure") {
        auto L = lattice_constants(F);
        auto r = measure_compare(K, {1, 2, 5, 10, 20}, hi(L.A1), hi(L.A2));
        return res(r.ok, std::to_string(r.K.size() + r.F.size()) + " samples");
    }
    throw PreconditionFailed("unknown check " + name);
}

int cmd_verify(const Options& o) {
    auto checks = o.checks.empty() ? kAllChecks : o.checks;
    for (auto& c : checks)
        if (std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end())
            throw PreconditionFailed("unknown check " + c);
    auto entries = o.corpus.empty() ? std::vector<Entry>{} : read_corpus(o.corpus);
    Fields fs(o.budget);
    std::mt19937_64 rng(o.seed);
    json rows = json::array();
    int total = 0, failed = 0, skipped = 0;
    for (auto& e : entries) {
        CMField K = build(fs, e, o.budget);
        json row;
        row["line"] = e.line;
        row["K"] = cm_label(K);
        json cj;
        for (auto& c : checks) {
            Outcome r;
            try {
                r = run_check(c, K, e, o, rng);
            } catch (const Error& ex) {
                if (ex.kind != ErrKind::Violation) throw;
                r = Outcome{"fail", ex.what()};
            }
            if (r.status == "skipped") ++skipped;
            else ++total;
            if (r.status == "fail") ++failed;
            cj[c] = json{{"status", r.status}, {"detail", r.detail}};
        }
        row["checks"] = cj;
        rows.push_back(row);
    }
    if (o.csv) {
        std::cout << "line,K";
        for (auto& c : checks) std::cout << "," << c;
        std::cout << "\n";
        for (auto& r : rows) {
            std::cout << r["line"].get<int>() << "," << r["K"].get<std::string>();
            for (auto& c : checks) std::cout << "," << r["checks"][c]["status"].get<std::string>();
            std::cout << "\n";
        }
    } else {
        json out;
        out["entries"] = rows;
        out["summary"] = {{"entries", entries.size()}, {"checks", total}, {"skipped", skipped},
                          {"violations", failed}, {"status", failed ? "FAIL" : "OK"}};
        emit(out);
    }
    return failed ? 1 : 0;
}

// ---- bound ----

std::map<std::string, double> read_injected(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionFailed("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& ex) {
        throw PreconditionFailed(std::string("bad JSON in ") + path + ": " + ex.what());
    }
    std::map<std::string, double> v;
    for (auto& [k, x] : j.items()) {
        if (!x.is_number()) throw PreconditionFailed("injected " + k + " is not a number");
        v[k] = x.get<double>();
    }
    return v;
}

int cmd_bound(const Options& o) {
    auto entries = o.corpus.empty() ? std::vector<Entry>{} : read_corpus(o.corpus);
    std::string strategy = o.strategy;
    std::map<std::string, double> injected;
    if (strategy.rfind("injected:", 0) == 0) {
        injected = read_injected(strategy.substr(9));
        strategy = "injected";
    } else if (strategy != "heuristic") {
        throw StrategyUnavailable(strategy);
    }
    Fields fs(o.budget);
    EigenvalueTable base = twist_table(curve_table(o.pmax), kronecker_char(kTwistDisc));
    std::map<std::pair<int, i64>, Bundle> bundles;
    auto bundle_for = [&](const Entry& e) -> const Bundle& {
        auto key = std::make_pair(e.n, e.n == 1 ? 0 : e.m);
        auto it = bundles.find(key);
        if (it != bundles.end()) return it->second;
        const Field& F = fs.get(e.n, e.m);
        EigenvalueTable f = e.n == 1 ? base : base_change_table(base, F);
        GOptions go;
        go.P = std::min<i64>(go.P, o.pmax);
        go.P_contour = std::min<i64>(go.P_contour, o.pmax);
        GConst G = G_constants(f, strategy, injected, go);
        return bundles.emplace(key, make_bundle(F, f, G)).first->second;
    };

    json rows = json::array();
    bool violation = false, infeasible = false;
    for (auto& e : entries) {
        CMField K = build(fs, e, o.budget);
        json row;
        row["K"] = cm_label(K);
        row["|d|"] = K.rel_disc.norm().str();
        auto g = lower_bound_t(K);
        row["t"] = g.t;
        row["h_K"] = K.hK;
        row["genus_bound"] = g.bound.str();
        try {
            row["vsum_ok"] = vsum_check(K, o.X).ok;
        } catch (const Error&) {
            row["vsum_ok"] = "n/a";
        }
        try {
            const Bundle& b = bundle_for(e);
            FinalBound fb = final_bound(K, b, o.grid);
            row["final_bound"] = num(fb.bound);
            row["slack"] = num(K.hK - fb.bound);
            row["status"] = fb.ok ? "ok" : "BoundViolated";
            violation |= !fb.ok;
            row["detail"] = final_bound_json(fb);
        } catch (const ParityFails& ex) {
            row["final_bound"] = "n/a";
            row["slack"] = "n/a";
            row["status"] = "ParityFails";
        } catch (const AssumptionViolated& ex) {
            row["final_bound"] = "n/a";
            row["slack"] = "n/a";
            row["status"] = "AssumptionViolated";
        } catch (const NoFeasibleLambda& ex) {
            row["final_bound"] = "n/a";
            row["slack"] = "n/a";
            row["status"] = "NoFeasibleLambda";
            infeasible = true;
        }
        rows.push_back(row);
    }
    if (o.csv) {
        std::cout << "K,|d|,t,h_K,genus_bound,vsum_ok,final_bound,slack,status\n";
        for (auto& r : rows) {
            bool first = true;
            for (auto k : {"K", "|d|", "t", "h_K", "genus_bound", "vsum_ok", "final_bound", "slack", "status"}) {
                std::cout << (first ? "" : ",") << csv_cell(r[k]);
                first = false;
            }
            std::cout << "\n";
        }
    } else {
        json out;
        json bj = json::object();
        for (auto& [k, b] : bundles) bj[k.first == 1 ? "Q" : "Q(sqrt" + std::to_string(k.second) + ")"] = bundle_json(b);
        out["bundles"] = bj;
        out["lambda_grid"] = o.grid;
        out["rows"] = rows;
        emit(out);
    }
    return violation ? 1 : infeasible ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative class numbers of CM extensions"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    std::string grid;
    app.add_option("--X", o.X, "series truncation");
    app.add_option("--pmax", o.pmax, "point-count bound");
    app.add_option("--budget", o.budget, "search budget");
    app.add_option("--seed", o.seed, "seed for sampled checks");
    auto* fj = app.add_flag("--json", "JSON output (default)");
    app.add_flag("--csv", o.csv, "CSV output")->excludes(fj);

    auto* field = app.add_subcommand("field", "field report");
    field->add_option("--n", o.n)->required();
    field->add_option("--m", o.m);
    auto* cls = app.add_subcommand("classify", "form classification of K = F(sqrt delta)");
    cls->add_option("--n", o.n)->required();
    cls->add_option("--m", o.m);
    cls->add_option("--delta", o.delta, "a,b for delta = a + b w")->required();
    auto* ver = app.add_subcommand("verify", "invariant suites over a corpus");
    ver->add_option("--corpus", o.corpus);
    ver->add_option("--checks", o.checks)->delimiter(',');
    auto* bnd = app.add_subcommand("bound", "class number bound per corpus entry");
    bnd->add_option("--corpus", o.corpus);
    bnd->add_option("--strategy", o.strategy, "heuristic or injected:FILE");
    bnd->add_option("--lambda-grid", grid, "comma separated, or 'decades'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (grid == "decades") {
            o.grid = decade_grid();
        } else if (!grid.empty()) {
            o.grid.clear();
            std::stringstream ss(grid);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                try {
                    o.grid.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw PreconditionFailed("bad lambda '" + tok + "'");
                }
            }
        }
        (void)precision_bits();
        if (*field) return cmd_field(o);
        if (*cls) return cmd_classify(o);
        if (*ver) return cmd_verify(o);
        if (*bnd) return cmd_bound(o);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return (int)e.kind;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
