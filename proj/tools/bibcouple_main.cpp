// Command-line front door: ingest publication records, resolve cited
// references and authors, build coupling networks, sweep their
// connectivity under edge-weight thresholds and emit indicator tables.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bibcouple/coupling.hpp"
#include "bibcouple/errors.hpp"
#include "bibcouple/indicators.hpp"
#include "bibcouple/percolation.hpp"
#include "bibcouple/pipeline.hpp"
#include "bibcouple/synth.hpp"
#include "bibcouple/text.hpp"
#include "bibcouple/text_norm.hpp"
#include "bibcouple/version.hpp"

namespace fs = std::filesystem;
using namespace bibcouple;

namespace {

std::string slurp(const std::string& path, Stage stage) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError(stage, "cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw StageError(stage, "read failure on '" + path + "'");
    return bytes;
}

void spill(const std::string& path, std::string_view content) {
    if (!path.empty()) {
        fs::path parent = fs::path(path).parent_path();
        if (!parent.empty()) {
            std::error_code ec;
            fs::create_directories(parent, ec);
        }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw config_error("cannot write '" + path + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw config_error("write failure on '" + path + "'");
}

std::vector<PeriodSpec> load_periods(const std::string& arg) {
    if (arg.empty() || arg == "citation-default") return citation_default_periods();
    if (arg == "text-default") return text_default_periods();
    return periods_from_json(slurp(arg, Stage::config));
}

std::vector<double> load_grid(const std::string& path) {
    std::istringstream in(slurp(path, Stage::config));
    std::vector<double> grid;
    std::string line;
    while (std::getline(in, line)) {
        auto t = bibcouple::trim(line);
        if (t.empty() || t.front() == '#') continue;
        char* end = nullptr;
        double v = std::strtod(std::string(t).c_str(), &end);
        grid.push_back(v);
    }
    if (grid.empty()) throw config_error("grid file '" + path + "' holds no thresholds");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw config_error("grid file must be strictly ascending");
    return grid;
}

ParsedCorpus ingest_corpus(const std::string& input, RecordFormat format, bool verbose = true) {
    ParseOptions opts;
    opts.format = format;
    ParsedCorpus corpus = parse_records_file(input, opts);
    if (verbose) {
        for (const auto& e : corpus.row_errors)
            std::cerr << "row error: line " << e.line << ": " << e.message << "\n";
    }
    if (corpus.records.empty()) throw ingest_error("no records parsed from '" + input + "'");
    return corpus;
}

void apply_match_config(const nlohmann::json& j, MatchRuleConfig& m) {
    if (j.contains("author_jw_min")) m.author_jw_min = j["author_jw_min"].get<double>();
    if (j.contains("title_jw_min_with_year")) m.title_jw_min_with_year = j["title_jw_min_with_year"].get<double>();
    if (j.contains("title_jw_min_alone")) m.title_jw_min_alone = j["title_jw_min_alone"].get<double>();
    if (j.contains("prefix_chars")) m.prefix_chars = j["prefix_chars"].get<int>();
    if (j.contains("author_surname_min")) m.author_surname_min = j["author_surname_min"].get<double>();
    if (j.contains("author_given_min")) m.author_given_min = j["author_given_min"].get<double>();
}

struct CommonArgs {
    std::string input;
    std::string format = "jsonl";
    std::string periods = "citation-default";
    std::string out;
    int threads = 0;
    std::string scope = "per-specialism";
    std::string config_file;
};

AuthorScope parse_scope(const std::string& s) {
    if (s == "per-specialism") return AuthorScope::per_specialism;
    if (s == "global") return AuthorScope::global;
    throw config_error("unknown author scope '" + s + "' (per-specialism or global)");
}

int cmd_synth(const std::string& config_path, std::uint64_t seed, bool seed_set, const std::string& out) {
    SynthConfig cfg;
    if (config_path == "fragmentation-default") {
        cfg = fragmentation_config(seed_set ? seed : 1);
    } else {
        cfg = synth_config_from_json(slurp(config_path, Stage::config));
        if (seed_set) cfg.seed = seed;
    }
    const std::string jsonl = emit_records(generate_corpus(cfg));
    if (out.empty() || out == "-") {
        std::cout << jsonl;
    } else {
        spill(out, jsonl);
        std::cerr << "wrote " << out << " (seed " << cfg.seed << ")\n";
    }
    return 0;
}

int cmd_ingest(const CommonArgs& a) {
    ParsedCorpus corpus = ingest_corpus(a.input, record_format_from_string(a.format));
    ParsedReferences refs = parse_all_references(corpus.records);
    nlohmann::ordered_json report;
    report["records"] = corpus.records.size();
    nlohmann::ordered_json row_errors = nlohmann::ordered_json::array();
    for (const auto& e : corpus.row_errors) row_errors.push_back({{"line", e.line}, {"message", e.message}});
    report["row_errors"] = std::move(row_errors);
    report["references"] = {
        {"total", refs.stats.total},
        {"parsed", refs.stats.parsed},
        {"discarded_anonymous", refs.stats.discarded_anonymous},
        {"discarded_yearless", refs.stats.discarded_yearless},
        {"malformed", refs.stats.malformed},
        {"multi_year_flagged", refs.stats.multi_year_flagged},
    };
    fs::create_directories(a.out);
    spill((fs::path(a.out) / "records.normalized.jsonl").string(), emit_records(corpus.records));
    spill((fs::path(a.out) / "ingest_report.json").string(), report.dump(2) + "\n");
    std::cerr << "ingested " << corpus.records.size() << " records, " << refs.stats.parsed << "/"
              << refs.stats.total << " references parsed\n";
    return 0;
}

int cmd_resolve(const CommonArgs& a, const std::string& dictionary_out) {
    MatchRuleConfig match;
    if (!a.config_file.empty()) {
        auto j = nlohmann::json::parse(slurp(a.config_file, Stage::config));
        if (j.contains("match")) apply_match_config(j["match"], match);
    }
    ParsedCorpus corpus = ingest_corpus(a.input, record_format_from_string(a.format));

    // Raw strings aligned with parsed references, for the dictionary file.
    std::vector<std::string> raw_strings;
    ParsedReferences refs = parse_all_references(corpus.records);
    raw_strings.reserve(refs.refs.size());
    for (const auto& r : corpus.records)
        for (const auto& raw : r.raw_references)
            if (parse_reference_string(raw).outcome == RefParseOutcome::parsed) raw_strings.push_back(raw);

    ReferenceResolution res;
    AuthorResolution authors;
    try {
        res = resolve_references(refs.refs, match, a.threads);
        authors = resolve_authors(collect_author_occurrences(corpus.records), match, parse_scope(a.scope));
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(Stage::resolution, e.what());
    }

    fs::create_directories(a.out);
    spill((fs::path(a.out) / "resolution_report.json").string(),
          resolution_report_json(res, refs.stats, &authors) + "\n");
    if (!dictionary_out.empty())
        spill(dictionary_out, reference_dictionary_json(raw_strings, refs.refs, res) + "\n");
    std::cerr << refs.refs.size() << " references -> " << res.clusters.size() << " clusters; "
              << authors.identity_of.size() << " author occurrences -> " << authors.identities.size()
              << " identities\n";
    return 0;
}

int cmd_network(const CommonArgs& a, const std::vector<std::string>& kinds) {
    MatchRuleConfig match;
    if (!a.config_file.empty()) {
        auto j = nlohmann::json::parse(slurp(a.config_file, Stage::config));
        if (j.contains("match")) apply_match_config(j["match"], match);
    }
    std::vector<NetworkChoice> choices;
    for (const auto& k : kinds) choices.push_back(network_choice_from_string(k));
    if (choices.empty())
        choices = {NetworkChoice::article_cosine, NetworkChoice::author_cosine, NetworkChoice::text_bm25};

    ParsedCorpus corpus = ingest_corpus(a.input, record_format_from_string(a.format));
    ResolvedCorpus resolved;
    try {
        resolved = resolve_corpus(std::move(corpus.records), match, parse_scope(a.scope), a.threads);
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(Stage::resolution, e.what());
    }

    CorpusSlices slices = slice_periods(resolved.records, load_periods(a.periods));
    std::set<std::string> specialisms;
    for (const auto& r : resolved.records) specialisms.insert(r.specialism);

    const bool wants_text = std::find(choices.begin(), choices.end(), NetworkChoice::text_bm25) != choices.end();
    std::vector<TokenProfile> profiles;
    std::vector<std::size_t> profile_record;
    IdfTable idf;
    if (wants_text) {
        for (std::size_t r = 0; r < resolved.records.size(); ++r) {
            const auto& rec = resolved.records[r];
            if (!rec.abstract) continue;
            TokenProfile p = tokenize(rec.title, *rec.abstract, rec.id);
            if (p.empty()) continue;
            profiles.push_back(std::move(p));
            profile_record.push_back(r);
        }
        idf = build_idf(profiles);
    }

    fs::create_directories(a.out);
    std::size_t written = 0;
    for (const auto& specialism : specialisms) {
        for (std::size_t p = 0; p < slices.periods.size(); ++p) {
            std::vector<std::size_t> slice;
            for (std::size_t r : slices.slices[p])
                if (resolved.records[r].specialism == specialism) slice.push_back(r);
            if (slice.empty()) continue;
            for (NetworkChoice kind : choices) {
                CoupledGraph g;
                try {
                    switch (kind) {
                        case NetworkChoice::article_cosine:
                            g = build_article_coupling(resolved, slice, slices.periods[p], specialism);
                            break;
                        case NetworkChoice::author_cosine:
                            g = build_author_coupling(resolved, slice, slices.periods[p], specialism);
                            break;
                        case NetworkChoice::text_bm25: {
                            std::vector<TokenProfile> subset;
                            std::set<std::size_t> members(slice.begin(), slice.end());
                            for (std::size_t i = 0; i < profiles.size(); ++i)
                                if (members.count(profile_record[i])) subset.push_back(profiles[i]);
                            g = build_text_coupling(subset, idf, slices.periods[p], specialism, 2.0, 0.75,
                                                    a.threads);
                            break;
                        }
                    }
                    g.validate();
                } catch (const StageError&) {
                    throw;
                } catch (const std::exception& e) {
                    throw StageError(Stage::network, e.what());
                }
                if (g.nodes.empty()) continue;
                const std::string base = std::string("network_") + sanitize_label(specialism) + "_" +
                                         sanitize_label(slices.periods[p].label) + "_" +
                                         network_choice_name(kind);
                spill((fs::path(a.out) / (base + ".edges.tsv")).string(), graph_edges_tsv(g));
                spill((fs::path(a.out) / (base + ".nodes.tsv")).string(), graph_nodes_tsv(g));
                spill((fs::path(a.out) / (base + ".summary.json")).string(), graph_summary_json(g) + "\n");
                ++written;
            }
        }
    }
    std::cerr << "wrote " << written << " networks to " << a.out << "\n";
    return 0;
}

int cmd_percolate(const std::string& edges_path, const std::string& nodes_path, const std::string& kind,
                  const std::string& grid_path, const std::string& out) {
    WeightKind wk;
    if (kind == "cosine") {
        wk = WeightKind::cosine_overlap;
    } else if (kind == "bm25") {
        wk = WeightKind::bm25_text;
    } else {
        throw config_error("unknown weight kind '" + kind + "' (cosine or bm25)");
    }
    CoupledGraph g;
    try {
        g = graph_from_tsv(slurp(edges_path, Stage::config), slurp(nodes_path, Stage::config), wk);
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(Stage::network, e.what());
    }
    std::vector<double> grid = grid_path.empty() ? default_threshold_grid(g) : load_grid(grid_path);
    ConnectivityProfile profile;
    try {
        profile = connectivity_profile(g, grid);
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(Stage::percolation, e.what());
    }
    spill(out, profile_csv(profile));
    std::cerr << "wrote " << out << " (" << profile.size() << " thresholds, " << g.node_count() << " nodes)\n";
    return 0;
}

int cmd_indicators(const CommonArgs& a, int window_years) {
    MatchRuleConfig match;
    ParsedCorpus corpus = ingest_corpus(a.input, record_format_from_string(a.format));
    ResolvedCorpus resolved;
    try {
        resolved = resolve_corpus(std::move(corpus.records), match, parse_scope(a.scope), a.threads);
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(Stage::resolution, e.what());
    }
    CorpusSlices slices = slice_periods(resolved.records, load_periods(a.periods));
    std::set<std::string> specialisms;
    for (const auto& r : resolved.records) specialisms.insert(r.specialism);

    std::vector<IndicatorRow> rows;
    for (const auto& specialism : specialisms) {
        for (std::size_t p = 0; p < slices.periods.size(); ++p) {
            std::vector<std::size_t> slice;
            for (std::size_t r : slices.slices[p])
                if (resolved.records[r].specialism == specialism) slice.push_back(r);
            if (slice.empty()) continue;
            rows.push_back(descriptive_stats(resolved, slice, specialism, slices.periods[p].label, window_years));
        }
    }
    spill(a.out, indicators_csv(rows));
    std::cerr << "wrote " << a.out << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_run(const CommonArgs& a, const std::vector<std::string>& kinds, const std::string& grid_path) {
    PipelineConfig cfg;
    cfg.input_path = a.input;
    cfg.format = record_format_from_string(a.format);
    cfg.periods = load_periods(a.periods);
    cfg.out_dir = a.out;
    cfg.threads = a.threads;
    cfg.author_scope = parse_scope(a.scope);
    for (const auto& k : kinds) cfg.networks.push_back(network_choice_from_string(k));
    if (!grid_path.empty()) cfg.grid_override = load_grid(grid_path);
    if (!a.config_file.empty()) {
        auto j = nlohmann::json::parse(slurp(a.config_file, Stage::config));
        if (j.contains("match")) apply_match_config(j["match"], cfg.match);
        if (j.contains("text_keep_isolates")) cfg.text_keep_isolates = j["text_keep_isolates"].get<bool>();
        if (j.contains("price_window_years")) cfg.price_window_years = j["price_window_years"].get<int>();
    }
    PipelineResult result = run_pipeline(cfg);
    std::cerr << "bundle of " << result.files_written.size() << " files in " << a.out << " (manifest "
              << result.manifest_hash << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bibliographic coupling connectivity toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<std::string> kinds;
    std::string grid_path, dictionary_out, edges_path, nodes_path, weight_kind = "cosine";
    std::string synth_config = "fragmentation-default", synth_out;
    std::uint64_t seed = 1;
    bool seed_set = false;
    int window_years = 10;

    auto add_common = [&](CLI::App* cmd, bool needs_out_dir) {
        cmd->add_option("--input", args.input, "input records file")->required();
        cmd->add_option("--format", args.format, "jsonl or tabular")->capture_default_str();
        cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)")->capture_default_str();
        cmd->add_option("--config", args.config_file, "JSON file with match thresholds etc.");
        if (needs_out_dir) cmd->add_option("--out", args.out, "output directory")->required();
    };

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    synth->add_option("--config", synth_config, "synth config JSON, or 'fragmentation-default'")
        ->capture_default_str();
    synth->add_option("--seed", seed, "override the config seed")->each([&](const std::string&) { seed_set = true; });
    synth->add_option("--out", synth_out, "output JSONL path ('-' = stdout)");

    auto* ingest = app.add_subcommand("ingest", "parse and normalize records");
    add_common(ingest, true);

    auto* resolve = app.add_subcommand("resolve", "disambiguate references and authors");
    add_common(resolve, true);
    resolve->add_option("--scope", args.scope, "author scope: per-specialism or global")->capture_default_str();
    resolve->add_option("--dictionary", dictionary_out, "also persist raw-string -> cluster-id dictionary");

    auto* network = app.add_subcommand("network", "build coupling networks");
    add_common(network, true);
    network->add_option("--periods", args.periods, "period file or citation-default/text-default")
        ->capture_default_str();
    network->add_option("--network", kinds, "article-cosine, author-cosine or text-bm25 (repeatable)");
    network->add_option("--scope", args.scope, "author scope")->capture_default_str();

    auto* percolate = app.add_subcommand("percolate", "threshold sweep over an exported network");
    percolate->add_option("--edges", edges_path, "edge list TSV")->required();
    percolate->add_option("--nodes", nodes_path, "node manifest TSV")->required();
    percolate->add_option("--kind", weight_kind, "cosine or bm25 (selects the default grid)")
        ->capture_default_str();
    percolate->add_option("--grid", grid_path, "threshold grid file (one ascending value per line)");
    percolate->add_option("--out", args.out, "output CSV path")->required();

    auto* indicators = app.add_subcommand("indicators", "descriptive indicator table");
    add_common(indicators, false);
    indicators->add_option("--periods", args.periods, "period file or named default")->capture_default_str();
    indicators->add_option("--scope", args.scope, "author scope")->capture_default_str();
    indicators->add_option("--window", window_years, "price index window in years")->capture_default_str();
    indicators->add_option("--out", args.out, "output CSV path")->required();

    auto* run = app.add_subcommand("run", "full pipeline into a report bundle");
    add_common(run, true);
    run->add_option("--periods", args.periods, "period file or named default")->capture_default_str();
    run->add_option("--network", kinds, "network kinds to build (default: all)");
    run->add_option("--grid", grid_path, "threshold grid override file");
    run->add_option("--scope", args.scope, "author scope")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(synth_config, seed, seed_set, synth_out);
        if (ingest->parsed()) return cmd_ingest(args);
        if (resolve->parsed()) return cmd_resolve(args, dictionary_out);
        if (network->parsed()) return cmd_network(args, kinds);
        if (percolate->parsed()) return cmd_percolate(edges_path, nodes_path, weight_kind, grid_path, args.out);
        if (indicators->parsed()) return cmd_indicators(args, window_years);
        if (run->parsed()) return cmd_run(args, kinds, grid_path);
    } catch (const StageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
