#include "sfair/cli.hpp"

#include <csignal>
#include <fstream>
#include <pthread.h>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sfair/error.hpp"
#include "sfair/ingest.hpp"
#include "sfair/render.hpp"
#include "sfair/server.hpp"
#include "sfair/sfairness.hpp"
#include "sfair/snapshot.hpp"
#include "sfair/weights.hpp"

namespace sfair::cli {
namespace {

constexpr const char* kDefaultSnapshot = "snapshot.bin";

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct IngestArgs {
    std::string data_dir;
    std::string out = kDefaultSnapshot;
    std::size_t corpus_size = kDefaultCorpusSize;
};

struct RankArgs {
    std::string snapshot = kDefaultSnapshot;
    std::string origin;
    unsigned month = 0;
    std::string weights;
    std::size_t top = 0;
    std::string format = "table";
    std::string sort = "psi";
};

struct IndicesArgs {
    std::string snapshot = kDefaultSnapshot;
    std::string city;
    unsigned month = 0;
    std::string weights;
};

struct ServeArgs {
    std::string snapshot = kDefaultSnapshot;
    std::string listen = "127.0.0.1:8080";
    std::vector<std::string> cors;
    std::string static_dir;
};

int do_ingest(const IngestArgs& a, std::ostream& out, std::ostream& err) {
    IngestOptions opts;
    opts.corpus_size = a.corpus_size;
    IngestOutcome outcome = ingest_directory(a.data_dir, opts);
    for (const auto& line : outcome.report.lines()) err << line << '\n';
    if (!outcome.snapshot) {
        err << "ingest failed\n";
        return kValidation;
    }
    save_snapshot(*outcome.snapshot, a.out);
    out << "snapshot " << outcome.snapshot->digest() << " written to " << a.out << " ("
        << outcome.snapshot->cities().size() << " cities, " << outcome.report.warning_count()
        << " warnings)\n";
    return kOk;
}

WeightConfig weights_for(const Snapshot& snap, const std::string& path) {
    if (path.empty()) return snap.inputs().weights;
    return weights_from_json_text(read_file(path), snap.inputs().weights, kPublishedSumTolerance);
}

int do_rank(const RankArgs& a, std::ostream& out) {
    const Snapshot snap = load_snapshot(a.snapshot);
    RankQuery query;
    query.origin = a.origin;
    query.month = a.month;
    query.weights = weights_for(snap, a.weights);
    query.sort = *parse_sort_key(a.sort);
    if (a.top > 0) query.limit = a.top;
    const Ranking ranking = rank_destinations(snap, query);
    if (a.format == "csv") {
        out << ranking_to_csv(ranking);
    } else if (a.format == "json") {
        out << dump_json(ranking_to_json(snap, query, ranking)) << '\n';
    } else {
        out << ranking_to_table(ranking);
    }
    return kOk;
}

int do_indices(const IndicesArgs& a, std::ostream& out) {
    const Snapshot snap = load_snapshot(a.snapshot);
    const WeightConfig weights = weights_for(snap, a.weights);
    if (a.month != 0) {
        out << dump_json(to_json(city_indices(snap, a.city, a.month, weights))) << '\n';
        return kOk;
    }
    nlohmann::json months = nlohmann::json::array();
    for (unsigned m = 1; m <= 12; ++m) months.push_back(to_json(city_indices(snap, a.city, m, weights)));
    out << dump_json({{"city", a.city}, {"snapshot", snap.digest()}, {"months", months}}) << '\n';
    return kOk;
}

int do_weights(const std::string& survey, std::ostream& out, std::ostream& err) {
    const SurveyWeights result = weights_from_survey(read_file(survey), survey);
    for (const auto& g : result.defaulted_groups) {
        err << survey << ": warning: no columns for group '" << g << "', using defaults\n";
    }
    out << weights_to_json(result.weights).dump(2) << '\n';
    return kOk;
}

int do_serve(const ServeArgs& a, std::ostream& err) {
    ServerOptions opts = parse_listen_address(a.listen);
    opts.cors_origins = a.cors;
    if (!a.static_dir.empty()) opts.static_dir = a.static_dir;

    SnapshotStore store;
    store.publish(std::make_shared<const Snapshot>(load_snapshot(a.snapshot)));
    HttpServer server(store, opts);

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    const int port = server.bind();
    if (port < 0) {
        err << "cannot listen on " << a.listen << '\n';
        return kValidation;
    }
    err << "serving " << store.current()->digest() << " on http://" << opts.host << ':' << port << '\n';
    std::thread([&server, signals] {
        int sig = 0;
        sigwait(&signals, &sig);
        server.stop();
    }).detach();
    server.serve();
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Destination sustainability scoring", "sfair"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a data directory and write a snapshot");
    ingest_cmd->add_option("--data-dir", ingest.data_dir, "Directory with the input files")
        ->envname("SFAIR_DATA_DIR")
        ->required();
    ingest_cmd->add_option("--out", ingest.out, "Snapshot file to write")->capture_default_str();
    ingest_cmd->add_option("--corpus-size", ingest.corpus_size, "Most populous cities to keep")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    RankArgs rank;
    auto* rank_cmd = app.add_subcommand("rank", "Rank destinations from an origin");
    rank_cmd->add_option("--snapshot", rank.snapshot)->envname("SFAIR_SNAPSHOT")->capture_default_str();
    rank_cmd->add_option("--origin", rank.origin, "Origin city id")->required();
    rank_cmd->add_option("--month", rank.month, "Travel month")->required()->check(CLI::Range(1u, 12u));
    rank_cmd->add_option("--weights", rank.weights, "Weight override file")->check(CLI::ExistingFile);
    rank_cmd->add_option("--top", rank.top, "Keep the first K rows")->check(CLI::PositiveNumber);
    rank_cmd->add_option("--format", rank.format)
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    rank_cmd->add_option("--sort", rank.sort)
        ->check([](const std::string& s) {
            return parse_sort_key(s) ? std::string() : "unknown sort key '" + s + "'";
        })
        ->capture_default_str();

    IndicesArgs indices;
    auto* indices_cmd = app.add_subcommand("indices", "Print the indices of one city");
    indices_cmd->add_option("--snapshot", indices.snapshot)->envname("SFAIR_SNAPSHOT")->capture_default_str();
    indices_cmd->add_option("--city", indices.city, "City id")->required();
    indices_cmd->add_option("--month", indices.month, "Single month (default: all)")
        ->check(CLI::Range(1u, 12u));
    indices_cmd->add_option("--weights", indices.weights, "Weight override file")->check(CLI::ExistingFile);

    std::string survey;
    auto* weights_cmd = app.add_subcommand("weights", "Derive weights from a Likert survey");
    weights_cmd->add_option("--survey", survey, "Survey CSV")->required()->check(CLI::ExistingFile);

    ServeArgs serve;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
    serve_cmd->add_option("--snapshot", serve.snapshot)->envname("SFAIR_SNAPSHOT")->capture_default_str();
    serve_cmd->add_option("--listen", serve.listen, "host:port")->envname("SFAIR_LISTEN")->capture_default_str();
    serve_cmd->add_option("--cors-origin", serve.cors, "Allowed origin, repeatable");
    serve_cmd->add_option("--static-dir", serve.static_dir, "Directory served at /")->check(CLI::ExistingDirectory);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "sfair: " << e.what() << '\n';
        if (!app.get_subcommands().empty()) {
            err << "see 'sfair " << app.get_subcommands().front()->get_name() << " --help'\n";
        }
        return kUsage;
    }

    try {
        if (*ingest_cmd) return do_ingest(ingest, out, err);
        if (*rank_cmd) return do_rank(rank, out);
        if (*indices_cmd) return do_indices(indices, out);
        if (*weights_cmd) return do_weights(survey, out, err);
        if (*serve_cmd) return do_serve(serve, err);
    } catch (const std::exception& e) {
        err << "sfair: " << e.what() << '\n';
        return kValidation;
    }
    return kUsage;
}

}  // namespace sfair::cli
