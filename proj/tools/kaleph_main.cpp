#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "kaleph/batch.hpp"
#include "kaleph/certificate.hpp"
#include "kaleph/strategies.hpp"

namespace fs = std::filesystem;
using namespace kaleph;

namespace {

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        std::uint64_t value = std::stoull(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": expected a number, got '" + text + "'");
    }
}

struct ConfigFlags {
    std::string maker = "vanilla";
    std::string breaker = "passive";
    std::uint64_t horizon = 50;
    std::uint64_t seed = 0;
    std::string first = "maker";
    std::string bias = "unit";
    std::string colouring;
    std::uint64_t k = 0;
};

void add_config_flags(CLI::App* cmd, ConfigFlags& f, bool with_breaker) {
    cmd->add_option("--maker", f.maker, "Maker strategy (vanilla|finite-colours|infinite-colours)");
    if (with_breaker)
        cmd->add_option("--breaker", f.breaker,
                        "Breaker strategy (passive|random|greedy-blocker|pairing|unbounded-bias)");
    cmd->add_option("--horizon", f.horizon, "Number of Maker moves (>= 1)");
    cmd->add_option("--seed", f.seed, "Seed for seeded strategies");
    cmd->add_option("--first", f.first, "Who moves first (maker|breaker)");
    cmd->add_option("--bias", f.bias, "Breaker allowance per block (unit|k:<n>|ceillog2)");
    cmd->add_option("--colouring", f.colouring, "Board colouring (modk:<k>|diagonal)");
    cmd->add_option("--k", f.k, "Palette size; shorthand for --colouring modk:<k>");
}

GameConfig build_config(const ConfigFlags& f) {
    if (f.horizon < 1) throw std::invalid_argument("--horizon must be at least 1");
    GameConfig cfg;
    cfg.horizon = f.horizon;
    cfg.seed = f.seed;

    if (f.first == "maker") cfg.first_player = Player::Maker;
    else if (f.first == "breaker") cfg.first_player = Player::Breaker;
    else throw std::invalid_argument("--first must be maker or breaker");

    if (f.bias == "unit") cfg.bias = BiasSchedule::unit();
    else if (f.bias == "ceillog2") cfg.bias = BiasSchedule::ceil_log2();
    else if (f.bias.rfind("k:", 0) == 0)
        cfg.bias = BiasSchedule::constant_k(parse_u64(f.bias.substr(2), "--bias"));
    else throw std::invalid_argument("--bias must be unit, k:<n> or ceillog2");

    std::string col = f.colouring;
    if (col.empty()) {
        if (f.k > 0) col = "modk:" + std::to_string(f.k);
        else if (f.maker == "finite-colours")
            throw std::invalid_argument("finite-colours needs --k or --colouring modk:<k>");
        else col = "diagonal";
    }
    if (col == "diagonal") cfg.colouring = Colouring::diagonal();
    else if (col.rfind("modk:", 0) == 0)
        cfg.colouring = Colouring::mod_k(parse_u64(col.substr(5), "--colouring"));
    else throw std::invalid_argument("--colouring must be modk:<k> or diagonal");

    if (f.k > 0) {
        auto palette = cfg.colouring.palette_size();
        if (!palette || *palette != f.k)
            throw std::invalid_argument("--k disagrees with --colouring");
    }
    return cfg;
}

fs::path default_out_dir() {
    if (const char* env = std::getenv("KALEPH_TRACE_DIR")) {
        fs::path dir(env);
        fs::create_directories(dir);
        return dir;
    }
    return fs::path(".");
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TraceError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

CliqueChain extract_for(const std::string& variant, const GameTrace& trace, std::uint64_t k) {
    if (variant == "vanilla") {
        std::uint64_t bias_k =
            trace.config.bias.kind == BiasSchedule::Kind::ConstantK ? trace.config.bias.param : 1;
        return extract_chain_vanilla(trace, bias_k);
    }
    if (variant == "finite-colours") {
        if (k == 0) {
            auto palette = trace.config.colouring.palette_size();
            if (!palette)
                throw std::invalid_argument("finite-colours certification needs --k on this board");
            k = *palette;
        }
        return extract_chain_finite(trace, k);
    }
    if (variant == "infinite-colours") {
        ColourSequence s = ColourSequence::anti_diagonal();
        return extract_chain_infinite(trace, s, s);
    }
    throw std::invalid_argument("unknown variant: " + variant);
}

std::uint64_t maker_edge_count(const GameTrace& trace) {
    std::uint64_t n = 0;
    for (const Claim& c : trace.moves)
        if (c.player == Player::Maker) ++n;
    return n;
}

std::string chain_summary(const CliqueChain& chain) {
    std::ostringstream out;
    out << chain.levels.size();
    if (!chain.levels.empty()) {
        out << " (top clique:";
        for (VertexId v : chain.levels.back().clique) out << " " << v;
        out << ")";
    }
    return out.str();
}

// ----------------------------------------------------------------------------
// play

int run_play(const ConfigFlags& f, const std::string& out_flag, std::uint64_t games, int jobs) {
    GameConfig base = build_config(f);
    std::vector<BatchSpec> specs;
    for (std::uint64_t g = 0; g < std::max<std::uint64_t>(games, 1); ++g) {
        BatchSpec spec;
        spec.config = base;
        spec.config.seed = base.seed + g;
        spec.maker = f.maker;
        spec.breaker = f.breaker;
        specs.push_back(spec);
    }
    auto results = run_batch(specs, jobs);

    int rc = 0;
    for (std::size_t g = 0; g < results.size(); ++g) {
        const BatchResult& r = results[g];
        if (!r.error.empty()) {
            std::cerr << "game " << g << ": " << r.error << "\n";
            rc = std::max(rc, r.fault ? 2 : 1);
            continue;
        }
        fs::path file;
        if (!out_flag.empty()) {
            file = out_flag;
            if (results.size() > 1)
                file.replace_filename(file.stem().string() + "-g" + std::to_string(g) +
                                      file.extension().string());
        } else {
            std::ostringstream name;
            name << "trace-" << f.maker << "-" << f.breaker << "-h" << specs[g].config.horizon
                 << "-s" << specs[g].config.seed << ".json";
            file = default_out_dir() / name.str();
        }
        write_file(file, dump_trace(r.trace));
        CliqueChain chain = extract_for(f.maker, r.trace, f.k);
        std::cout << "horizon=" << specs[g].config.horizon
                  << " maker_edges=" << maker_edge_count(r.trace)
                  << " chain=" << chain.levels.size() << " trace=" << file.string() << "\n";
    }
    return rc;
}

// ----------------------------------------------------------------------------
// replay

int run_replay(const std::string& in_flag) {
    GameTrace trace = parse_trace(read_file(in_flag));
    ClaimLedger ledger;
    try {
        ledger = replay(trace);
    } catch (const std::exception& e) {
        std::cerr << "replay failed: " << e.what() << "\n";
        return 3;
    }
    std::uint64_t maker = 0, breaker = 0;
    for (const Claim& c : ledger.claims()) (c.player == Player::Maker ? maker : breaker)++;
    std::cout << "ok turns=" << ledger.size() << " maker_moves=" << maker
              << " breaker_moves=" << breaker << (trace.aborted ? " aborted" : "") << "\n";
    return 0;
}

// ----------------------------------------------------------------------------
// certify

int run_certify(const std::string& in_flag, const std::string& variant, std::uint64_t k,
                const std::string& out_flag, bool check_pairing) {
    GameTrace trace = parse_trace(read_file(in_flag));
    CliqueChain chain = extract_for(variant, trace, k);
    VerifyParams params;
    if (k > 0) params.k = k;
    else if (auto palette = trace.config.colouring.palette_size()) params.k = *palette;
    VerificationReport report = verify_chain(chain, trace, params);

    bool pairing_ok = true;
    if (check_pairing) {
        PairingTable table(trace.config.colouring);
        VerificationReport pairing = pairing_guarantee_check(trace, table);
        pairing_ok = pairing.pass;
        std::cout << "pairing_guarantee=" << (pairing.pass ? "pass" : "fail") << "\n";
        for (const std::string& f : pairing.failures) std::cout << "  " << f << "\n";
    }

    std::string text = dump_report(report);
    if (out_flag.empty()) std::cout << text;
    else write_file(out_flag, text);
    std::cout << "chain=" << chain_summary(chain) << " verify=" << (report.pass ? "pass" : "fail")
              << "\n";
    return report.pass && pairing_ok ? 0 : 2;
}

// ----------------------------------------------------------------------------
// metrics

int run_metrics(const std::string& in_flag, const std::string& variant, std::uint64_t k,
                std::uint64_t stride, const std::string& out_flag) {
    GameTrace trace = parse_trace(read_file(in_flag));
    ChainVariant v;
    if (variant == "vanilla") v = ChainVariant::Vanilla;
    else if (variant == "finite-colours") v = ChainVariant::FiniteColours;
    else if (variant == "infinite-colours") v = ChainVariant::InfiniteColours;
    else throw std::invalid_argument("unknown variant: " + variant);
    if (v == ChainVariant::FiniteColours && k == 0) {
        auto palette = trace.config.colouring.palette_size();
        if (!palette) throw std::invalid_argument("finite-colours metrics needs --k on this board");
        k = *palette;
    }
    auto curve = growth_curve(trace, v, std::max<std::uint64_t>(k, 1), stride);
    std::ostringstream csv;
    csv << "horizon,chain_length\n";
    for (auto [h, len] : curve) csv << h << "," << len << "\n";
    if (out_flag.empty()) std::cout << csv.str();
    else write_file(out_flag, csv.str());
    return 0;
}

// ----------------------------------------------------------------------------
// interactive

class HumanBreaker : public Strategy {
public:
    HumanBreaker(std::istream& in, std::ostream& out, std::string variant, std::uint64_t k)
        : in_(in), out_(out), variant_(std::move(variant)), k_(k) {}

    std::string_view name() const override { return "human"; }

    std::vector<Edge> next_moves(const GameView& view, std::uint64_t allowance) override {
        ++block_;
        describe_board(view);
        std::vector<Edge> block;
        std::unordered_set<Edge, EdgeHash> mine;
        while (block.size() < allowance) {
            out_ << "breaker " << block.size() + 1 << "/" << allowance << "> " << std::flush;
            std::string line;
            if (!std::getline(in_, line)) {
                out_ << "\n(end of input)\n";
                throw AbortGame{};
            }
            std::istringstream parse(line);
            std::string first_tok;
            if (!(parse >> first_tok)) continue;
            if (first_tok == "q" || first_tok == "quit") throw AbortGame{};
            VertexId u = 0, v = 0;
            std::istringstream edge_parse(line);
            if (!(edge_parse >> u >> v) || u == v) {
                out_ << "enter two distinct vertex ids, or q to quit\n";
                continue;
            }
            Edge e = canonical_edge(u, v);
            if (auto prior = view.ledger.claim_on(e)) {
                out_ << "edge (" << e.lo << "," << e.hi << ") claimed by "
                     << to_string(prior->player) << " at turn " << prior->turn << "\n";
                continue;
            }
            if (mine.count(e)) {
                out_ << "edge (" << e.lo << "," << e.hi << ") already picked in this block\n";
                continue;
            }
            block.push_back(e);
            mine.insert(e);
        }
        return block;
    }

private:
    void describe_board(const GameView& view) {
        const Claim* last = nullptr;
        std::uint64_t maker_edges = 0;
        for (const Claim& c : view.ledger.claims())
            if (c.player == Player::Maker) {
                last = &c;
                ++maker_edges;
            }
        if (last)
            out_ << "maker claimed (" << last->edge.lo << "," << last->edge.hi << ") [" << maker_edges
                 << " maker edges]\n";
        else
            out_ << "no maker moves yet\n";
        if (block_ % 5 == 1 && maker_edges > 0) {
            GameTrace so_far;
            so_far.config.colouring = view.colouring;
            for (const Claim& c : view.ledger.claims()) so_far.moves.push_back(c);
            CliqueChain chain = extract_for(variant_, so_far, k_);
            out_ << "maker's chain so far: " << chain_summary(chain) << "\n";
        }
    }

    std::istream& in_;
    std::ostream& out_;
    std::string variant_;
    std::uint64_t k_;
    std::uint64_t block_ = 0;
};

int run_interactive(const ConfigFlags& f, const std::string& out_flag) {
    GameConfig cfg = build_config(f);
    auto maker = make_maker(f.maker, cfg);
    HumanBreaker human(std::cin, std::cout, f.maker, f.k);
    GameTrace trace = run_game(cfg, *maker, human);

    fs::path file = out_flag.empty()
                        ? default_out_dir() / ("trace-interactive-s" + std::to_string(cfg.seed) + ".json")
                        : fs::path(out_flag);
    write_file(file, dump_trace(trace));
    std::cout << (trace.aborted ? "session aborted, " : "session complete, ") << "trace=" << file.string()
              << "\n";

    if (maker_edge_count(trace) > 0) {
        CliqueChain chain = extract_for(f.maker, trace, f.k);
        VerifyParams params;
        if (f.k > 0) params.k = f.k;
        VerificationReport report = verify_chain(chain, trace, params);
        std::cout << "chain=" << chain_summary(chain) << " verify="
                  << (report.pass ? "pass" : "fail") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Maker-Breaker clique-building games on precoloured infinite boards"};
    app.require_subcommand(1);

    ConfigFlags play_flags;
    std::string play_out;
    std::uint64_t play_games = 1;
    int play_jobs = 1;
    CLI::App* play = app.add_subcommand("play", "Run games and write trace files");
    add_config_flags(play, play_flags, true);
    play->add_option("--out", play_out, "Trace file path (default: KALEPH_TRACE_DIR or cwd)");
    play->add_option("--games", play_games, "Number of games (seeds seed..seed+games-1)");
    play->add_option("--jobs", play_jobs, "Worker threads for --games > 1");

    std::string replay_in;
    CLI::App* replay_cmd = app.add_subcommand("replay", "Validate a trace file");
    replay_cmd->add_option("trace", replay_in, "Trace file")->required();

    std::string certify_in, certify_variant = "vanilla", certify_out;
    std::uint64_t certify_k = 0;
    bool certify_pairing = false;
    CLI::App* certify = app.add_subcommand("certify", "Extract and verify a clique chain");
    certify->add_option("trace", certify_in, "Trace file")->required();
    certify->add_option("--variant", certify_variant,
                        "Chain variant (vanilla|finite-colours|infinite-colours)");
    certify->add_option("--k", certify_k, "Palette size for the finite-colours variant");
    certify->add_option("--out", certify_out, "Report file (default: stdout)");
    certify->add_flag("--pairing", certify_pairing, "Also check the pairing-pair guarantee");

    std::string metrics_in, metrics_variant = "vanilla", metrics_out;
    std::uint64_t metrics_k = 0, metrics_stride = 1;
    CLI::App* metrics = app.add_subcommand("metrics", "Emit the chain growth curve as CSV");
    metrics->add_option("trace", metrics_in, "Trace file")->required();
    metrics->add_option("--variant", metrics_variant,
                        "Chain variant (vanilla|finite-colours|infinite-colours)");
    metrics->add_option("--k", metrics_k, "Palette size for the finite-colours variant");
    metrics->add_option("--stride", metrics_stride, "Horizon step between samples");
    metrics->add_option("--out", metrics_out, "CSV file (default: stdout)");

    ConfigFlags inter_flags;
    std::string inter_out;
    CLI::App* interactive = app.add_subcommand("interactive", "Play Breaker by hand against Maker");
    add_config_flags(interactive, inter_flags, false);
    interactive->add_option("--out", inter_out, "Trace file path");

    int rc = 0;
    play->callback([&] { rc = run_play(play_flags, play_out, play_games, play_jobs); });
    replay_cmd->callback([&] { rc = run_replay(replay_in); });
    certify->callback(
        [&] { rc = run_certify(certify_in, certify_variant, certify_k, certify_out, certify_pairing); });
    metrics->callback(
        [&] { rc = run_metrics(metrics_in, metrics_variant, metrics_k, metrics_stride, metrics_out); });
    interactive->callback([&] { rc = run_interactive(inter_flags, inter_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const StrategyFault& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const TraceError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const IllegalMove& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ProtocolError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return rc;
}
