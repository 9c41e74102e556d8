#include "qeuclid/suite.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <thread>

#include "qeuclid/algebra_checks.hpp"
#include "qeuclid/calculus_checks.hpp"
#include "qeuclid/frames_checks.hpp"
#include "qeuclid/geometry.hpp"

namespace qe {

using json = nlohmann::json;

const std::vector<CheckInfo>& check_catalog() {
    static const std::vector<CheckInfo> c = {
        {"braid", Level::matrix, "Rhat12 Rhat23 Rhat12 = Rhat23 Rhat12 Rhat23"},
        {"braid2", Level::matrix, "f(R12) R23 R12 = R23 R12 f(R23) for the projectors and Rhat^-1"},
        {"propR1", Level::matrix, "Rhat symmetric, P Rhat lower triangular"},
        {"propR2", Level::matrix, "Rhat(1/q) = Rhat^-1 with all indices negated"},
        {"propR3", Level::matrix, "index-sum selection rule of Rhat"},
        {"squareR", Level::matrix, "Rhat^2 closed form"},
        {"gRrel", Level::matrix, "metric contractions of Rhat"},
        {"metric", Level::matrix, "g symmetric-inverse properties"},
        {"projectors", Level::matrix, "projector idempotence, orthogonality, completeness, reconstruction"},
        {"Pt", Level::matrix, "trace projector closed form"},
        {"ranks", Level::matrix, "projector ranks"},
        {"sigma-braid", Level::matrix, "braid relation of the flip S"},
        {"sigma-pi", Level::matrix, "P_a (S + 1) = 0 and S12 S23 P_a12 = P_a23 S12 S23"},
        {"metric-compat", Level::matrix, "S g S = q^{+-2} g delta"},
        {"xrel", Level::algebra, "P_a x x = 0 in normal form"},
        {"explicitx", Level::algebra, "explicit coordinate relations"},
        {"generator-rel", Level::algebra, "relations of r_j, Lambda, K"},
        {"defr", Level::algebra, "r_j^2 = sum g x x"},
        {"center", Level::algebra, "r_n^2 is central"},
        {"rutil1", Level::algebra, "recursive form of r_i^2"},
        {"rutil2", Level::algebra, "second recursive form of r_i^2"},
        {"confluence", Level::algebra, "associativity and bracketing independence on random words"},
        {"grading", Level::algebra, "grading preserved by normalization"},
        {"star-alg", Level::algebra, "star is an antilinear anti-automorphism and an involution"},
        {"embed", Level::algebra, "embedding into N+2 is a homomorphism"},
        {"dirac", Level::calculus, "-[theta, x^i] = xi^i"},
        {"xixi", Level::calculus, "xi xi relations and projection idempotence"},
        {"transport", Level::calculus, "coefficient transport through r_j and inverses"},
        {"bimodule", Level::calculus, "transport is a right action"},
        {"leibniz", Level::calculus, "Leibniz rule for d on Lambda,K-free elements"},
        {"star-forms", Level::calculus, "theta^* = -thetabar, (xi^i)^* = xibar^j g_ji"},
        {"d-lambda", Level::calculus, "-[theta, Lambda], reported"},
        {"e-table", Level::frames, "entries of e^i_a = [lambda_a, x^i]"},
        {"xlambda", Level::frames, "x e = q Rhat e x"},
        {"lambdax", Level::frames, "lambda e = q^-1 Rhat^-1 e lambda"},
        {"rll", Level::frames, "RLL relation of e"},
        {"gll", Level::frames, "gLL relation of e"},
        {"lambda-rel", Level::frames, "P_a lambda lambda = 0 and explicit form"},
        {"s2", Level::frames, "closed form of s_a^2"},
        {"lambda-comm", Level::frames, "lambda exchange with r_i, Lambda, K"},
        {"phi-L", Level::frames, "triangularity and relations of phi(L)"},
        {"theorem3", Level::frames, "gluing of both frames (N odd, theorem3 constants)"},
        {"even-obstruction", Level::frames, "gluing fails for N even"},
        {"frame-commute", Level::frames, "[x^i, theta^a] = [r_j, theta^a] = [Lambda, theta^a] = 0"},
        {"frame-rel", Level::frames, "P_s theta theta = P_t theta theta = 0"},
        {"duality", Level::frames, "xi^i = e^i_a theta^a"},
        {"rtheta", Level::frames, "RTT relation of theta^a_l"},
        {"star-link", Level::frames, "lambda^* = -g lambdabar, (theta^a)^* = thetabar^b g_ba"},
        {"partial-link", Level::frames, "partial derivatives through the frame"},
        {"dxi", Level::geometry, "D xi = 0 or the closed form"},
        {"torsion", Level::geometry, "pi D xi = 0"},
        {"curvature", Level::geometry, "pi12 D2 D xi = 0"},
        {"metric-xi", Level::geometry, "g(xi^i (x) xi^j) = g^ij Lambda^{+-2}"},
        {"reality", Level::geometry, "g sigma(eta^* (x) xi^*) = g(xi (x) eta)^*"},
        {"classical-limit", Level::geometry, "q = 1 limit of g and D"},
    };
    return c;
}

const CheckInfo* find_check(const std::string& id) {
    for (const auto& c : check_catalog())
        if (c.id == id) return &c;
    return nullptr;
}

RadMode parse_mode(const std::string& s) {
    if (s == "transcendental") return RadMode::transcendental;
    if (s == "theorem3") return RadMode::theorem3;
    if (s == "star-link") return RadMode::star_link;
    throw UsageError("unknown mode '" + s + "' (transcendental, theorem3, star-link)");
}

mpq_class parse_q(const std::string& s) {
    mpq_class q;
    if (s.empty() || q.set_str(s, 10) != 0) throw UsageError("not a rational number: '" + s + "'");
    q.canonicalize();
    if (q <= 0) throw UsageError("q must be positive: " + s);
    if (q == 1) throw UsageError("q = 1 is singular (k = q - 1/q vanishes)");
    return q;
}

namespace {

bool per_calc(const std::string& id, Level lv) {
    if (id == "star-forms" || id == "theorem3" || id == "even-obstruction" || id == "star-link" || id == "reality")
        return false;
    return lv == Level::calculus || lv == Level::frames || lv == Level::geometry;
}

bool per_flip(const std::string& id, Level lv) {
    return lv == Level::geometry || id == "sigma-braid" || id == "sigma-pi" || id == "metric-compat";
}

// Why a check does not apply at N under the configuration, or nullopt.
std::optional<std::string> inapplicable(const CheckInfo& c, int N, const RunConfig& cfg) {
    if (c.id == "theorem3" && N % 2 == 0) return "theorem3 needs N odd";
    if (c.id == "even-obstruction" && N % 2 == 1) return "even-obstruction needs N even";
    if (c.id == "theorem3" && cfg.mode == RadMode::star_link) return "theorem3 excludes star-link mode";
    if (c.id == "star-link" && cfg.mode == RadMode::theorem3) return "star-link excludes theorem3 mode";
    if (!cfg.allow_large) {
        if (N > kMaxMatrixN) return "N > " + std::to_string(kMaxMatrixN) + " needs --allow-large";
        if (c.level != Level::matrix && N > kMaxAlgebraN)
            return c.id + " at N > " + std::to_string(kMaxAlgebraN) + " needs --allow-large";
    }
    return std::nullopt;
}

std::vector<Calc> calcs(const RunConfig& c) {
    if (c.calculus == "unbarred") return {Calc::unbarred};
    if (c.calculus == "barred") return {Calc::barred};
    return {Calc::unbarred, Calc::barred};
}

std::vector<Flip> flips(const RunConfig& c) {
    if (c.flip == "qR") return {Flip::qR};
    if (c.flip == "qR_inverse") return {Flip::qR_inverse};
    return {Flip::qR, Flip::qR_inverse};
}

std::vector<const CheckInfo*> selected(const RunConfig& c) {
    std::vector<const CheckInfo*> r;
    if (c.checks.empty() || (c.checks.size() == 1 && c.checks[0] == "all")) {
        for (const auto& ci : check_catalog()) r.push_back(&ci);
        return r;
    }
    std::set<std::string> want(c.checks.begin(), c.checks.end());
    for (const auto& ci : check_catalog())
        if (want.count(ci.id)) r.push_back(&ci);
    return r;
}

}  // namespace

void validate(const RunConfig& c) {
    if (c.Ns.empty()) throw UsageError("no N given");
    for (int N : c.Ns)
        if (N < 3) throw UsageError("N must be at least 3, got " + std::to_string(N));
    if (c.calculus != "unbarred" && c.calculus != "barred" && c.calculus != "both")
        throw UsageError("calculus must be unbarred, barred or both");
    if (c.flip != "qR" && c.flip != "qR_inverse" && c.flip != "both")
        throw UsageError("flip must be qR, qR_inverse or both");
    if (c.jobs < 1) throw UsageError("jobs must be at least 1");
    for (int n : {c.samples.confluence, c.samples.grading, c.samples.star_alg, c.samples.embed, c.samples.bimodule,
                  c.samples.leibniz, c.samples.partial_link})
        if (n < 0) throw UsageError("sample counts must be non-negative");
    if (!c.symbolic && c.qvals.empty()) throw UsageError("nothing to run: symbolic disabled and no q values");
    for (const auto& q : c.qvals) parse_q(q);
    if (c.mode == RadMode::theorem3)
        for (int N : c.Ns)
            if (N % 2 == 0) throw UsageError("theorem3 mode requires odd N, got N = " + std::to_string(N));
    for (const auto& id : c.checks) {
        if (id == "all" && c.checks.size() == 1) continue;
        const CheckInfo* ci = find_check(id);
        if (!ci) throw UsageError("unknown check '" + id + "'");
        std::optional<std::string> why;
        bool anywhere = false;
        for (int N : c.Ns) {
            auto w = inapplicable(*ci, N, c);
            if (!w) anywhere = true;
            else if (!why) why = w;
        }
        if (!anywhere) throw UsageError(*why);
    }
    if (!c.allow_large)
        for (int N : c.Ns)
            if (N > kMaxMatrixN) throw UsageError("N > " + std::to_string(kMaxMatrixN) + " needs --allow-large");
}

RunConfig apply_json(RunConfig c, const json& j) {
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "N") c.Ns = v.get<std::vector<int>>();
            else if (key == "calculus") c.calculus = v.get<std::string>();
            else if (key == "flip") c.flip = v.get<std::string>();
            else if (key == "mode") c.mode = parse_mode(v.get<std::string>());
            else if (key == "checks") c.checks = v.get<std::vector<std::string>>();
            else if (key == "q") c.qvals = v.get<std::vector<std::string>>();
            else if (key == "symbolic") c.symbolic = v.get<bool>();
            else if (key == "allow_large") c.allow_large = v.get<bool>();
            else if (key == "seed") c.seed = v.get<unsigned>();
            else if (key == "jobs") c.jobs = v.get<int>();
            else if (key == "samples") {
                for (const auto& [sk, sv] : v.items()) {
                    int n = sv.get<int>();
                    if (sk == "confluence") c.samples.confluence = n;
                    else if (sk == "grading") c.samples.grading = n;
                    else if (sk == "star_alg") c.samples.star_alg = n;
                    else if (sk == "embed") c.samples.embed = n;
                    else if (sk == "bimodule") c.samples.bimodule = n;
                    else if (sk == "leibniz") c.samples.leibniz = n;
                    else if (sk == "partial_link") c.samples.partial_link = n;
                    else throw UsageError("unknown samples key '" + sk + "'");
                }
            } else if (key == "report" || key == "cache_dir" || key == "cache") {
                // handled by the command line front end
            } else {
                throw UsageError("unknown config key '" + key + "'");
            }
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("bad config value: ") + e.what());
    }
    return c;
}

long Report::passed() const {
    return std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

// ---- execution ----

namespace {

// Lazily built objects for one (N, scalar point); safe to share between threads.
template <class S>
class Context {
public:
    Context(Model<S> m, const MatrixCache* cache) : model_(std::move(m)), cache_(cache) {}

    const MatrixData<S>& data() {
        std::call_once(d_once_, [&] {
            if constexpr (std::is_same_v<S, RatFunc>) {
                if (cache_ && cache_->enabled()) {
                    auto r = cache_->get(model_.N());
                    if (!r.warning.empty()) warn(r.warning);
                    d_ = std::make_unique<MatrixData<S>>(std::move(r.data));
                    return;
                }
            }
            d_ = std::make_unique<MatrixData<S>>(model_);
        });
        return *d_;
    }
    const Algebra<S>& algebra() {
        std::call_once(a_once_, [&] { a_ = std::make_unique<Algebra<S>>(model_); });
        return *a_;
    }
    const Algebra<S>& bigger() {
        std::call_once(b_once_, [&] { b_ = std::make_unique<Algebra<S>>(Model<S>(model_.N() + 2, model_.scalars())); });
        return *b_;
    }
    const Calculus<S>& calculus(Calc c) {
        int i = c == Calc::unbarred ? 0 : 1;
        std::call_once(c_once_[i], [&] { c_[i] = std::make_unique<Calculus<S>>(algebra(), data(), c); });
        return *c_[i];
    }
    const FramePair<S>& frames(RadMode m) {
        int i = static_cast<int>(m);
        std::call_once(f_once_[i], [&] { f_[i] = std::make_unique<FramePair<S>>(make_frame_pair(algebra(), m)); });
        return *f_[i];
    }
    const Geometry<S>& geometry(Calc c, Flip f) {
        int i = (c == Calc::unbarred ? 0 : 2) + (f == Flip::qR ? 0 : 1);
        std::call_once(g_once_[i], [&] { g_[i] = std::make_unique<Geometry<S>>(calculus(c), f); });
        return *g_[i];
    }
    std::vector<std::string> warnings() {
        std::lock_guard lk(mu_);
        return warnings_;
    }

private:
    void warn(const std::string& w) {
        std::lock_guard lk(mu_);
        warnings_.push_back(w);
    }
    Model<S> model_;
    const MatrixCache* cache_;
    std::once_flag d_once_, a_once_, b_once_, c_once_[2], f_once_[3], g_once_[4];
    std::unique_ptr<MatrixData<S>> d_;
    std::unique_ptr<Algebra<S>> a_, b_;
    std::unique_ptr<Calculus<S>> c_[2];
    std::unique_ptr<FramePair<S>> f_[3];
    std::unique_ptr<Geometry<S>> g_[4];
    std::mutex mu_;
    std::vector<std::string> warnings_;
};

struct Task {
    int point;  // 0 symbolic (when enabled), then the q values
    int N;
    const CheckInfo* check;
    Calc calc = Calc::unbarred;
    Flip flip = Flip::qR;
};

template <class S>
CheckResult execute(Context<S>& X, const Task& t, const RunConfig& cfg) {
    const std::string& id = t.check->id;
    const Samples& n = cfg.samples;
    const unsigned seed = cfg.seed;
    // native constants: theorem3 and star-link fix their own, even-obstruction keeps them free
    RadMode mode = cfg.mode;
    if (id == "theorem3") mode = RadMode::theorem3;
    else if (id == "star-link") mode = RadMode::star_link;
    else if (id == "even-obstruction") mode = RadMode::transcendental;

    switch (t.check->level) {
        case Level::matrix: {
            const auto& d = X.data();
            if (id == "braid") return check_braid(d);
            if (id == "braid2") return check_braid2(d);
            if (id == "propR1") return check_propR1(d);
            if (id == "propR2") return check_propR2(d);
            if (id == "propR3") return check_propR3(d);
            if (id == "squareR") return check_squareR(d);
            if (id == "gRrel") return check_gRrel(d);
            if (id == "metric") return check_metric(d);
            if (id == "projectors") return check_projectors(d);
            if (id == "Pt") return check_Pt(d);
            if (id == "ranks") return check_ranks(d);
            if (id == "sigma-braid") return check_sigma_braid(d, t.flip);
            if (id == "sigma-pi") return check_sigma_pi(d, t.flip);
            if (id == "metric-compat") return check_metric_compat(d, t.flip);
            break;
        }
        case Level::algebra: {
            const auto& A = X.algebra();
            if (id == "xrel") return check_xrel(X.data(), A);
            if (id == "explicitx") return check_explicitx(A);
            if (id == "generator-rel") return check_generator_rel(A);
            if (id == "defr") return check_defr(A);
            if (id == "center") return check_center(A);
            if (id == "rutil1") return check_rutil1(A);
            if (id == "rutil2") return check_rutil2(A);
            if (id == "confluence") return check_confluence(A, n.confluence, seed);
            if (id == "grading") return check_grading(A, n.grading, seed + 1);
            if (id == "star-alg") return check_star_alg(A, n.star_alg, seed + 2);
            if (id == "embed") return check_embed(A, X.bigger(), n.embed, seed + 3);
            break;
        }
        case Level::calculus: {
            const auto& C = X.calculus(t.calc);
            if (id == "dirac") return check_dirac(C);
            if (id == "xixi") return check_xixi(C);
            if (id == "transport") return check_transport(C);
            if (id == "bimodule") return check_bimodule(C, n.bimodule, seed + 4);
            if (id == "leibniz") return check_leibniz(C, n.leibniz, seed + 5);
            if (id == "star-forms") return check_star_forms(X.calculus(Calc::unbarred), X.calculus(Calc::barred));
            if (id == "d-lambda") return check_d_lambda(C);
            break;
        }
        case Level::frames: {
            const auto& A = X.algebra();
            const auto& d = X.data();
            const auto& P = X.frames(mode);
            const auto& F = P.of(t.calc);
            if (id == "e-table") return check_e_table(A, F, P.G.of(t.calc));
            if (id == "xlambda") return check_xlambda(A, d, F);
            if (id == "lambdax") return check_lambdax(A, d, F);
            if (id == "rll") return check_rll(A, d, F);
            if (id == "gll") return check_gll(A, F);
            if (id == "lambda-rel") return check_lambda_rel(A, d, F);
            if (id == "s2") return check_s2(A, F);
            if (id == "lambda-comm") return check_lambda_comm(A, F);
            if (id == "phi-L") return check_phi_L(A, d, F);
            if (id == "theorem3") return check_theorem3(A, d, P);
            if (id == "even-obstruction") return check_even_obstruction(A, d, P);
            if (id == "frame-commute") return check_frame_commute(X.calculus(t.calc), F);
            if (id == "frame-rel") return check_frame_rel(X.calculus(t.calc), F);
            if (id == "duality") return check_duality(X.calculus(t.calc), F);
            if (id == "rtheta") return check_rtheta(A, d, F);
            if (id == "star-link") return check_star_link(X.calculus(Calc::unbarred), X.calculus(Calc::barred), P);
            if (id == "partial-link") return check_partial_link(X.calculus(t.calc), F, n.partial_link, seed + 6);
            break;
        }
        case Level::geometry: {
            if (id == "reality") return check_reality(X.geometry(Calc::unbarred, t.flip), X.geometry(Calc::barred, t.flip));
            const auto& G = X.geometry(t.calc, t.flip);
            if (id == "dxi") return check_dxi(G);
            if (id == "torsion") return check_torsion(G);
            if (id == "curvature") return check_curvature(G);
            if (id == "metric-xi") return check_metric_xi(G);
            if (id == "classical-limit") {
                if constexpr (std::is_same_v<S, RatFunc>) return check_classical_limit(G);
            }
            break;
        }
    }
    throw std::logic_error("no runner for check " + id);
}

std::string task_config(const Task& t, const std::string& label) {
    std::string r;
    if (per_calc(t.check->id, t.check->level)) r += to_string(t.calc) + " ";
    if (per_flip(t.check->id, t.check->level)) r += to_string(t.flip) + " ";
    return r + label;
}

}  // namespace

Report run(const RunConfig& cfg, const MatrixCache& cache) {
    validate(cfg);
    Report rep;
    rep.config = cfg;

    std::vector<int> Ns = cfg.Ns;
    std::sort(Ns.begin(), Ns.end());
    Ns.erase(std::unique(Ns.begin(), Ns.end()), Ns.end());

    // points: symbolic first, then each q
    std::vector<std::string> labels;
    std::vector<std::unique_ptr<Context<RatFunc>>> sym;
    std::vector<std::vector<std::unique_ptr<Context<QNum>>>> num;
    const int first_q = cfg.symbolic ? 1 : 0;
    if (cfg.symbolic) {
        labels.push_back("symbolic");
        for (int N : Ns) sym.push_back(std::make_unique<Context<RatFunc>>(Model<RatFunc>(N), &cache));
    }
    for (const auto& qs : cfg.qvals) {
        Scalars<QNum> sc(parse_q(qs));
        labels.push_back(sc.label());
        num.emplace_back();
        for (int N : Ns) num.back().push_back(std::make_unique<Context<QNum>>(Model<QNum>(N, sc), nullptr));
    }

    std::vector<Task> tasks;
    auto sel = selected(cfg);
    for (int p = 0; p < static_cast<int>(labels.size()); ++p)
        for (int N : Ns)
            for (const CheckInfo* c : sel) {
                if (inapplicable(*c, N, cfg)) continue;
                if (c->id == "classical-limit" && p >= first_q) continue;
                std::vector<Calc> cs = per_calc(c->id, c->level) ? calcs(cfg) : std::vector<Calc>{Calc::unbarred};
                std::vector<Flip> fs = per_flip(c->id, c->level) ? flips(cfg) : std::vector<Flip>{Flip::qR};
                for (Calc cc : cs)
                    for (Flip ff : fs) tasks.push_back({p, N, c, cc, ff});
            }

    auto npos = [&](int N) { return static_cast<size_t>(std::find(Ns.begin(), Ns.end(), N) - Ns.begin()); };
    rep.results.resize(tasks.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < tasks.size();) {
            const Task& t = tasks[i];
            Stopwatch sw;
            CheckResult r;
            try {
                if (t.point < first_q) r = execute(*sym[npos(t.N)], t, cfg);
                else r = execute(*num[t.point - first_q][npos(t.N)], t, cfg);
            } catch (const std::exception& e) {
                r.id = t.check->id;
                r.N = t.N;
                r.pass = false;
                r.ms = sw.ms();
                r.witness = std::string("exception: ") + e.what();
            }
            r.config = task_config(t, labels[t.point]);
            rep.results[i] = std::move(r);
        }
    };
    int nthreads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (auto& X : sym)
        for (auto& w : X->warnings()) rep.warnings.push_back(w);
    return rep;
}

json config_json(const RunConfig& c) {
    json j;
    j["N"] = c.Ns;
    j["calculus"] = c.calculus;
    j["flip"] = c.flip;
    j["mode"] = to_string(c.mode);
    j["checks"] = c.checks.empty() ? std::vector<std::string>{"all"} : c.checks;
    j["q"] = c.qvals;
    j["symbolic"] = c.symbolic;
    j["allow_large"] = c.allow_large;
    j["seed"] = c.seed;
    j["samples"] = {{"confluence", c.samples.confluence}, {"grading", c.samples.grading},
                    {"star_alg", c.samples.star_alg},     {"embed", c.samples.embed},
                    {"bimodule", c.samples.bimodule},     {"leibniz", c.samples.leibniz},
                    {"partial_link", c.samples.partial_link}};
    return j;
}

json report_json(const Report& r, bool timing) {
    json j;
    j["tool"] = "qeuclid";
    j["schema"] = 1;
    j["config"] = config_json(r.config);
    json res = json::array();
    for (const auto& c : r.results) {
        json e;
        e["id"] = c.id;
        e["N"] = c.N;
        e["config"] = c.config;
        e["pass"] = c.pass;
        e["ms"] = timing ? std::round(c.ms * 1000) / 1000 : 0.0;
        e["witness"] = c.witness;
        e["value"] = c.value;
        res.push_back(std::move(e));
    }
    j["results"] = std::move(res);
    long passed = r.passed();
    long total = static_cast<long>(r.results.size());
    j["summary"] = {{"total", total}, {"passed", passed}, {"failed", total - passed}, {"pass", passed == total}};
    return j;
}

}  // namespace qe
