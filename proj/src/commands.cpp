#include "bosonext/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bosonext/expr.hpp"
#include "bosonext/globalbasis.hpp"
#include "bosonext/verify.hpp"

namespace bosonext {

namespace {

using nlohmann::json;

struct RunOptions {
    std::string type = "A2";
    std::string cartan_file;
    std::string rw;
    int max_height = 6;
    int series_depth = 8;
    std::string cache;
    std::uint64_t seed = 0;
    int trials = 25;
    bool text = false;
    bool json_flag = false;
};

bool is_usage_error(ErrorCode c) {
    switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::EvalError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidCartan:
    case ErrorCode::UnsupportedType: return true;
    default: return false;
    }
}

CartanDatum load_cartan(const RunOptions& o) {
    if (!o.cartan_file.empty()) return CartanDatum::from_file(o.cartan_file);
    return CartanDatum::preset(o.type);
}

std::vector<int> parse_rw(const std::string& text, std::size_t rank) {
    std::vector<int> rw;
    if (text.empty()) return rw;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, "--rw expects comma-separated indices");
        }
        if (used != item.size() || v < 1 || static_cast<std::size_t>(v) > rank)
            throw Error(ErrorCode::InvalidArgument, "--rw entry out of range: " + item);
        rw.push_back(v - 1);
    }
    return rw;
}

std::string cache_path(const RunOptions& o) {
    if (const char* env = std::getenv("BOSONEXT_CACHE"); env && *env) return env;
    return o.cache;
}

// Sort key: (-level, basis word) per factor.
std::vector<std::pair<int, Word>> order_key(const HatAlgebra& h, const NormalKey& k) {
    std::vector<std::pair<int, Word>> r;
    for (const auto& f : k) r.emplace_back(-f.level, h.context().weight_basis(f.depth).words[f.index]);
    return r;
}

std::vector<std::pair<NormalKey, RatFunc>> ordered_terms(const HatAlgebra& h, const HatElem& x) {
    std::vector<std::pair<NormalKey, RatFunc>> t(x.terms().begin(), x.terms().end());
    std::stable_sort(t.begin(), t.end(), [&](const auto& a, const auto& b) { return order_key(h, a.first) < order_key(h, b.first); });
    return t;
}

json render_terms(const HatAlgebra& h, const HatElem& x) {
    json terms = json::array();
    for (const auto& [key, c] : ordered_terms(h, x)) {
        json mono = json::array();
        for (const auto& l : h.word_of(key)) mono.push_back(json::array({l.i + 1, l.m}));
        terms.push_back({{"coeff", c.to_string()}, {"monomial", mono}});
    }
    return terms;
}

json render_index(const ExtIndex& b) {
    json r = json::array();
    for (const auto& [k, a] : b) r.push_back(json::array({k, a}));
    return r;
}

void emit(std::ostream& out, const RunOptions& o, const json& j, const std::string& text) {
    if (o.text)
        out << text << "\n";
    else
        out << j.dump(1) << "\n";
}

struct Session {
    RunOptions opt;
    std::unique_ptr<UqContext> ctx;
    std::unique_ptr<HatAlgebra> h;

    void open() {
        if (opt.max_height < 1) throw Error(ErrorCode::InvalidArgument, "--max-height must be positive");
        if (opt.series_depth < 1) throw Error(ErrorCode::InvalidArgument, "--series-depth must be positive");
        if (opt.trials < 0) throw Error(ErrorCode::InvalidArgument, "--trials must be nonnegative");
        ctx = std::make_unique<UqContext>(load_cartan(opt), opt.max_height);
        h = std::make_unique<HatAlgebra>(*ctx);
    }
    HatElem eval(const std::string& s) const { return eval_expr(parse_expr(s), *h); }
};

std::string series_text(const std::vector<std::string>& s) {
    std::string r = "[";
    for (std::size_t k = 0; k < s.size(); ++k) r += (k ? ", " : "") + s[k];
    return r + "]";
}

}  // namespace

std::string render_text(const HatAlgebra& h, const HatElem& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : ordered_terms(h, x)) {
        std::string mono;
        for (const auto& l : h.word_of(key)) mono += (mono.empty() ? "" : "*") + std::string("f(") + std::to_string(l.i + 1) + "," + std::to_string(l.m) + ")";
        std::string coeff = c.to_string();
        bool compound = coeff.find(' ') != std::string::npos || coeff.find("/(") != std::string::npos;
        std::string term;
        if (mono.empty())
            term = compound ? "(" + coeff + ")" : coeff;
        else if (c.is_one())
            term = mono;
        else
            term = (compound ? "(" + coeff + ")" : coeff) + "*" + mono;
        out += (first ? "" : " + ") + term;
        first = false;
    }
    return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Session s;
    RunOptions& o = s.opt;
    CLI::App app{"Exact computations in the bosonic extension of a quantum group"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--type", o.type, "Cartan preset (An, Bn, Cn, Dn, E6-E8, F4, G2, A1(1))");
    app.add_option("--cartan-file", o.cartan_file, "Cartan datum file: n, n rows of the matrix, one row of symmetrizers");
    app.add_option("--rw", o.rw, "Reduced word of w0, 1-based, comma separated");
    app.add_option("--max-height", o.max_height, "Height bound of weight spaces");
    app.add_option("--series-depth", o.series_depth, "Number of q^{1/2}-coefficients in series prefixes");
    app.add_option("--cache", o.cache, "Global basis cache file (BOSONEXT_CACHE takes precedence)");
    app.add_option("--seed", o.seed, "Seed of randomized suites");
    app.add_option("--trials", o.trials, "Trials of randomized suites");
    auto* text_flag = app.add_flag("--text", o.text, "Human-readable output");
    auto* json_flag = app.add_flag("--json", o.json_flag, "JSON output (default)");
    text_flag->excludes(json_flag);

    std::string expr_a, expr_b;
    auto* normalize = app.add_subcommand("normalize", "Normal form of an expression");
    normalize->add_option("expr", expr_a, "Expression")->required();
    auto* form = app.add_subcommand("form", "Bilinear form (x, y) = M(x D(y))");
    form->add_option("x", expr_a)->required();
    form->add_option("y", expr_b)->required();
    auto* pair = app.add_subcommand("pair", "Pairing q^{-N(wt x)} (x, y) of homogeneous elements");
    pair->add_option("x", expr_a)->required();
    pair->add_option("y", expr_b)->required();
    std::vector<std::string> gram_exprs, gram_profile;
    std::string gram_pairing = "form";
    auto* gram = app.add_subcommand("gram", "Gram matrix of expressions or of a level-profile block");
    gram->add_option("exprs", gram_exprs, "Expressions");
    gram->add_option("--profile", gram_profile, "Level factor LEVEL:d1,...,dn; repeat for several levels");
    gram->add_option("--pairing", gram_pairing, "form or pair")->check(CLI::IsMember({"form", "pair"}));
    auto* gb = app.add_subcommand("gb", "Global basis");
    gb->require_subcommand(1);
    std::string gb_levels = "0,1";
    int gb_height = 2;
    auto* gb_table = gb->add_subcommand("table", "Global basis elements of a level window");
    gb_table->add_option("--levels", gb_levels, "LO,HI");
    gb_table->add_option("--strong-height", gb_height, "Bound on the sum of level heights");
    std::string suite;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        if (!o.text) out << json{{"error", "UsageError"}, {"message", e.what()}}.dump(1) << "\n";
        return kExitUsage;
    }

    try {
        s.open();
        const HatAlgebra& h = *s.h;
        if (normalize->parsed()) {
            Expr e = parse_expr(expr_a);
            HatElem x = eval_expr(e, h);
            emit(out, o, {{"command", "normalize"}, {"input", print_expr(e)}, {"terms", render_terms(h, x)}}, render_text(h, x));
        } else if (form->parsed() || pair->parsed()) {
            bool is_form = form->parsed();
            HatElem x = s.eval(expr_a), y = s.eval(expr_b);
            RatFunc v = is_form ? h.hform(x, y) : h.pairform(x, y);
            emit(out, o,
                 {{"command", is_form ? "form" : "pair"},
                  {"x", print_expr(parse_expr(expr_a))},
                  {"y", print_expr(parse_expr(expr_b))},
                  {"value", v.to_string()}},
                 v.to_string());
        } else if (gram->parsed()) {
            std::vector<HatElem> elems;
            std::vector<std::string> labels;
            if (!gram_profile.empty()) {
                if (!gram_exprs.empty()) throw Error(ErrorCode::InvalidArgument, "give expressions or --profile, not both");
                std::map<int, RootVec> profile;
                for (const auto& item : gram_profile) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--profile expects LEVEL:d1,...,dn");
                    RootVec d(h.context().rank());
                    std::stringstream ss(item.substr(colon + 1));
                    std::string c;
                    std::size_t k = 0;
                    try {
                        int level = std::stoi(item.substr(0, colon));
                        while (std::getline(ss, c, ',')) {
                            if (k >= d.size()) throw Error(ErrorCode::InvalidArgument, "--profile depth has too many entries");
                            d[k++] = std::stoi(c);
                        }
                        if (k != d.size()) throw Error(ErrorCode::InvalidArgument, "--profile depth has too few entries");
                        if (!is_nonnegative(d)) throw Error(ErrorCode::InvalidArgument, "--profile depth must be nonnegative");
                        profile[level] = d;
                    } catch (const std::logic_error&) {
                        throw Error(ErrorCode::InvalidArgument, "--profile expects integers");
                    }
                }
                // all tensors of basis elements, higher levels first
                std::vector<std::map<int, UqmElem>> tensors{{}};
                for (const auto& [level, d] : profile) {
                    std::vector<std::map<int, UqmElem>> next;
                    for (const auto& t : tensors)
                        for (std::size_t j = 0; j < h.context().weight_basis(d).size(); ++j) {
                            auto u = t;
                            u[level] = h.context().basis_element(d, j);
                            next.push_back(std::move(u));
                        }
                    tensors.swap(next);
                }
                for (const auto& t : tensors) {
                    elems.push_back(h.G_map(h.tensor(t)));
                    labels.push_back(render_text(h, elems.back()));
                }
            } else {
                if (gram_exprs.empty()) throw Error(ErrorCode::InvalidArgument, "gram needs expressions or --profile");
                for (const auto& e : gram_exprs) {
                    Expr p = parse_expr(e);
                    elems.push_back(eval_expr(p, h));
                    labels.push_back(print_expr(p));
                }
            }
            Mat g(elems.size(), Vec(elems.size()));
            for (std::size_t a = 0; a < elems.size(); ++a)
                for (std::size_t b = 0; b < elems.size(); ++b)
                    g[a][b] = gram_pairing == "form" ? h.hform(elems[a], elems[b]) : h.pairform(elems[a], elems[b]);
            json rows = json::array();
            std::string text;
            for (const auto& r : g) {
                json row = json::array();
                for (const auto& v : r) {
                    row.push_back(v.to_string());
                    text += (text.empty() || text.back() == '\n' ? "" : "\t") + v.to_string();
                }
                rows.push_back(row);
                text += "\n";
            }
            RatFunc det = mat_det(g);
            text += "det = " + det.to_string();
            emit(out, o, {{"command", "gram"}, {"pairing", gram_pairing}, {"elements", labels}, {"matrix", rows}, {"determinant", det.to_string()}},
                 text);
        } else if (gb_table->parsed()) {
            int lo = 0, hi = 0;
            char comma = 0;
            std::stringstream ss(gb_levels);
            if (!(ss >> lo >> comma >> hi) || comma != ',' || lo > hi) throw Error(ErrorCode::InvalidArgument, "--levels expects LO,HI");
            if (gb_height < 0) throw Error(ErrorCode::InvalidArgument, "--strong-height must be nonnegative");
            DualPbw pbw(h.context(), parse_rw(o.rw, h.context().rank()));
            GlobalBasis basis(h, pbw);
            std::string path = cache_path(o);
            if (!path.empty()) basis.load_cache(path);
            json rows = json::array();
            std::string text;
            for (const auto& b : basis.indices(lo, hi, gb_height)) {
                const GBEntry& g = basis.G(b);
                HatElem gt = basis.G_tilde(b);
                std::vector<std::string> prefix;
                for (const auto& c : series_at_zero(h.hform(gt, gt), o.series_depth)) prefix.push_back(c.get_str());
                rows.push_back({{"index", render_index(b)},
                                {"weight", g.weight.c},
                                {"element", render_terms(h, g.element)},
                                {"self_pairing_prefix", prefix}});
                text += to_string(b) + "  wt " + to_string(g.weight) + "  G = " + render_text(h, g.element) + "  (G~,G~) = " + series_text(prefix) + "\n";
            }
            if (!path.empty()) basis.save_cache(path);
            if (!text.empty()) text.pop_back();
            emit(out, o, {{"command", "gb table"}, {"type", h.cartan().name()}, {"reduced_word", [&] {
                               std::vector<int> r;
                               for (int i : pbw.reduced_word()) r.push_back(i + 1);
                               return r;
                           }()},
                          {"rows", rows}},
                 text);
        } else if (verify->parsed()) {
            SuiteConfig cfg;
            cfg.reduced_word = parse_rw(o.rw, h.context().rank());
            cfg.max_height = std::min(4, o.max_height);
            cfg.series_depth = o.series_depth;
            cfg.seed = o.seed;
            cfg.trials = o.trials;
            cfg.cache_path = cache_path(o);
            SuiteResult r = run_suite(suite, h.context(), cfg);
            json j{{"suite", r.suite},      {"passed", r.passed},     {"checks", r.checks}, {"failures", r.failures},
                   {"messages", r.messages}, {"type", h.cartan().name()}, {"seed", o.seed},   {"trials", o.trials}};
            std::string text = "suite " + r.suite + ": " + (r.passed ? "PASS" : "FAIL") + " (" + std::to_string(r.checks) + " checks, " +
                               std::to_string(r.failures) + " failures)";
            for (const auto& m : r.messages) text += "\n  " + m;
            emit(out, o, j, text);
            return r.passed ? kExitOk : kExitComputation;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << e.what() << "\n";
        json j{{"error", error_code_name(e.code())}, {"message", e.what()}};
        if (const auto* pe = dynamic_cast<const ParseError*>(&e)) j["offset"] = pe->offset();
        if (!o.text) out << j.dump(1) << "\n";
        return is_usage_error(e.code()) ? kExitUsage : kExitComputation;
    }
}

}  // namespace bosonext
