#include "bibcouple/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bibcouple/coupling.hpp"
#include "bibcouple/errors.hpp"
#include "bibcouple/indicators.hpp"
#include "bibcouple/percolation.hpp"
#include "bibcouple/text.hpp"
#include "bibcouple/version.hpp"

namespace bibcouple {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

NetworkChoice network_choice_from_string(const std::string& s) {
    if (s == "article-cosine") return NetworkChoice::article_cosine;
    if (s == "author-cosine") return NetworkChoice::author_cosine;
    if (s == "text-bm25") return NetworkChoice::text_bm25;
    throw config_error("unknown network kind '" + s + "' (article-cosine, author-cosine or text-bm25)");
}

const char* network_choice_name(NetworkChoice c) {
    switch (c) {
        case NetworkChoice::article_cosine: return "article-cosine";
        case NetworkChoice::author_cosine: return "author-cosine";
        case NetworkChoice::text_bm25: return "text-bm25";
    }
    return "unknown";
}

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string sanitize_label(const std::string& label) {
    std::string out;
    out.reserve(label.size());
    for (unsigned char c : label) {
        if ((c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || c == '-' || c == '.') {
            out.push_back(static_cast<char>(c));
        } else if (c >= 'A' && c <= 'Z') {
            out.push_back(static_cast<char>(c - 'A' + 'a'));
        } else {
            out.push_back('_');
        }
    }
    return out.empty() ? std::string("_") : out;
}

namespace {

// Collects everything written so a failed run can be rolled back.
class BundleWriter {
  public:
    explicit BundleWriter(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw config_error("cannot create output directory '" + dir_.string() + "'");
    }

    void write(const std::string& name, std::string_view content) {
        const fs::path path = dir_ / name;
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out) throw config_error("cannot write '" + path.string() + "'");
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            if (!out) throw config_error("write failure on '" + path.string() + "'");
        }
        names_.push_back(name);
        hashes_.emplace(name, fnv1a64_hex(content));
    }

    void rollback() {
        for (const auto& name : names_) {
            std::error_code ec;
            fs::remove(dir_ / name, ec);
        }
        names_.clear();
        hashes_.clear();
    }

    const std::vector<std::string>& names() const { return names_; }
    const std::map<std::string, std::string>& hashes() const { return hashes_; }

  private:
    fs::path dir_;
    std::vector<std::string> names_;
    std::map<std::string, std::string> hashes_;
};

ordered_json config_json(const PipelineConfig& c) {
    ordered_json j;
    j["input"] = c.input_path;
    j["format"] = c.format == RecordFormat::jsonl ? "jsonl" : "tabular";
    ordered_json periods = ordered_json::array();
    for (const auto& p : c.periods) periods.push_back({{"label", p.label}, {"start", p.start_year}, {"end", p.end_year}});
    j["periods"] = std::move(periods);
    j["match"] = {
        {"author_jw_min", c.match.author_jw_min},
        {"title_jw_min_with_year", c.match.title_jw_min_with_year},
        {"title_jw_min_alone", c.match.title_jw_min_alone},
        {"prefix_chars", c.match.prefix_chars},
        {"author_surname_min", c.match.author_surname_min},
        {"author_given_min", c.match.author_given_min},
    };
    ordered_json networks = ordered_json::array();
    for (auto n : c.networks) networks.push_back(network_choice_name(n));
    j["networks"] = std::move(networks);
    if (c.grid_override) j["grid_override"] = *c.grid_override;
    j["author_scope"] = c.author_scope == AuthorScope::per_specialism ? "per-specialism" : "global";
    j["text_keep_isolates"] = c.text_keep_isolates;
    j["price_window_years"] = c.price_window_years;
    return j;
}

std::string read_file_bytes(const std::string& path, Stage stage) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError(stage, "cannot open '" + path + "'");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw StageError(stage, "read failure on '" + path + "'");
    return bytes;
}

struct GraphArtifacts {
    CoupledGraph graph;
    std::string base_name;
};

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config_in) {
    PipelineConfig config = config_in;
    if (config.periods.empty()) config.periods = citation_default_periods();
    if (config.networks.empty())
        config.networks = {NetworkChoice::article_cosine, NetworkChoice::author_cosine,
                           NetworkChoice::text_bm25};
    if (config.out_dir.empty()) throw config_error("output directory not set");
    if (config.grid_override) {
        if (config.grid_override->empty()) throw config_error("grid override is empty");
        for (std::size_t i = 1; i < config.grid_override->size(); ++i)
            if (!((*config.grid_override)[i] > (*config.grid_override)[i - 1]))
                throw config_error("grid override must be strictly ascending");
    }

    BundleWriter bundle((fs::path(config.out_dir)));
    try {
        // ---- ingest ----------------------------------------------------
        const std::string input_bytes = read_file_bytes(config.input_path, Stage::ingest);
        ParseOptions popts;
        popts.format = config.format;
        ParsedCorpus corpus = [&] {
            std::istringstream in(input_bytes);
            return parse_records(in, popts);
        }();
        if (corpus.records.empty()) throw ingest_error("no records parsed from '" + config.input_path + "'");

        ordered_json ingest_report;
        ingest_report["records"] = corpus.records.size();
        ordered_json row_errors = ordered_json::array();
        for (const auto& e : corpus.row_errors) row_errors.push_back({{"line", e.line}, {"message", e.message}});
        ingest_report["row_errors"] = std::move(row_errors);

        // ---- resolution ------------------------------------------------
        ResolvedCorpus resolved;
        try {
            resolved = resolve_corpus(std::move(corpus.records), config.match, config.author_scope,
                                      config.threads);
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(Stage::resolution, e.what());
        }
        ingest_report["references"] = {
            {"total", resolved.ref_stats.total},
            {"parsed", resolved.ref_stats.parsed},
            {"discarded_anonymous", resolved.ref_stats.discarded_anonymous},
            {"discarded_yearless", resolved.ref_stats.discarded_yearless},
            {"malformed", resolved.ref_stats.malformed},
            {"multi_year_flagged", resolved.ref_stats.multi_year_flagged},
        };
        bundle.write("ingest_report.json", ingest_report.dump(2) + "\n");
        bundle.write("records.normalized.jsonl", emit_records(resolved.records));
        bundle.write("resolution_report.json",
                     resolution_report_json(resolved.ref_resolution, resolved.ref_stats,
                                            &resolved.author_resolution) +
                         "\n");

        // ---- slicing ---------------------------------------------------
        std::set<std::string> specialisms;
        for (const auto& r : resolved.records) specialisms.insert(r.specialism);

        CorpusSlices slices = slice_periods(resolved.records, config.periods);

        // Text profiles and IDF are global over every dataset. Articles
        // without a usable abstract are excluded from text networks (or
        // kept as edge-less isolates when configured); either way they do
        // not enter the IDF table or the mean document length.
        std::vector<TokenProfile> all_profiles;
        std::vector<std::size_t> profile_record;   // record index per profile
        std::vector<std::size_t> isolate_records;  // excluded articles, kept as isolates if configured
        std::uint64_t excluded_no_abstract = 0, excluded_empty_profile = 0;
        const bool wants_text = std::find(config.networks.begin(), config.networks.end(),
                                          NetworkChoice::text_bm25) != config.networks.end();
        IdfTable idf;
        if (wants_text) {
            for (std::size_t r = 0; r < resolved.records.size(); ++r) {
                const auto& rec = resolved.records[r];
                if (!rec.abstract) {
                    ++excluded_no_abstract;
                    isolate_records.push_back(r);
                    continue;
                }
                TokenProfile p = tokenize(rec.title, *rec.abstract, rec.id);
                if (p.empty()) {
                    ++excluded_empty_profile;
                    isolate_records.push_back(r);
                    continue;
                }
                all_profiles.push_back(std::move(p));
                profile_record.push_back(r);
            }
            idf = build_idf(all_profiles);

            ordered_json text_report;
            text_report["profiled"] = all_profiles.size();
            text_report["excluded_no_abstract"] = excluded_no_abstract;
            text_report["excluded_empty_profile"] = excluded_empty_profile;
            text_report["excluded_kept_as_isolates"] = config.text_keep_isolates;
            bundle.write("text_report.json", text_report.dump(2) + "\n");
        }

        // ---- networks + percolation -------------------------------------
        struct ProfiledGraph {
            std::string specialism;
            std::string period;
            NetworkChoice kind;
            CoupledGraph graph;
            ConnectivityProfile profile;
        };
        std::vector<ProfiledGraph> profiled;

        ordered_json percolation_meta = ordered_json::array();
        for (const auto& specialism : specialisms) {
            for (std::size_t p = 0; p < slices.periods.size(); ++p) {
                std::vector<std::size_t> slice;
                for (std::size_t r : slices.slices[p])
                    if (resolved.records[r].specialism == specialism) slice.push_back(r);
                if (slice.empty()) continue;

                for (NetworkChoice kind : config.networks) {
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
                                for (std::size_t i = 0; i < all_profiles.size(); ++i)
                                    if (members.count(profile_record[i])) subset.push_back(all_profiles[i]);
                                if (config.text_keep_isolates) {
                                    for (std::size_t r : isolate_records) {
                                        if (!members.count(r)) continue;
                                        TokenProfile isolate;
                                        isolate.doc_id = resolved.records[r].id;
                                        subset.push_back(std::move(isolate));
                                    }
                                }
                                g = build_text_coupling(subset, idf, slices.periods[p], specialism, 2.0, 0.75,
                                                        config.threads);
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
                    bundle.write(base + ".edges.tsv", graph_edges_tsv(g));
                    bundle.write(base + ".nodes.tsv", graph_nodes_tsv(g));
                    bundle.write(base + ".summary.json", graph_summary_json(g) + "\n");

                    std::vector<double> grid =
                        config.grid_override ? *config.grid_override : default_threshold_grid(g);
                    ConnectivityProfile profile;
                    try {
                        profile = connectivity_profile(g, grid);
                    } catch (const StageError&) {
                        throw;
                    } catch (const std::exception& e) {
                        throw StageError(Stage::percolation, e.what());
                    }

                    const std::string profile_name = std::string("profile_") + sanitize_label(specialism) +
                                                     "_" + sanitize_label(slices.periods[p].label) + "_" +
                                                     network_choice_name(kind) + ".csv";
                    bundle.write(profile_name, profile_csv(profile));
                    percolation_meta.push_back({{"specialism", specialism},
                                                {"period", slices.periods[p].label},
                                                {"kind", network_choice_name(kind)},
                                                {"grid", config.grid_override ? "override" : "default"},
                                                {"file", profile_name}});
                    profiled.push_back(
                        {specialism, slices.periods[p].label, kind, std::move(g), std::move(profile)});
                }
            }
        }
        bundle.write("percolation_index.json", percolation_meta.dump(2) + "\n");

        // Cross-specialism mean/median curves per network kind and period,
        // averaged pointwise. Cosine profiles already share the fixed grid.
        // bm25 grids are data-driven per graph, so those groups are re-swept
        // on the pooled quantile grid of the period's edge weights.
        for (NetworkChoice kind : config.networks) {
            std::string csv = "period,threshold,mean_c,median_c,series\n";
            bool any = false;
            for (std::size_t p = 0; p < slices.periods.size(); ++p) {
                std::vector<const ProfiledGraph*> group;
                for (const auto& pg : profiled)
                    if (pg.kind == kind && pg.period == slices.periods[p].label) group.push_back(&pg);
                if (group.empty()) continue;

                bool same_grid = true;
                for (const auto* pg : group)
                    if (pg->profile.thresholds != group[0]->profile.thresholds) same_grid = false;

                std::vector<ConnectivityProfile> curves;
                if (same_grid) {
                    for (const auto* pg : group) curves.push_back(pg->profile);
                } else {
                    std::vector<double> pooled;
                    for (const auto* pg : group)
                        for (const auto& e : pg->graph.edges) pooled.push_back(e.weight);
                    std::sort(pooled.begin(), pooled.end());
                    std::vector<double> grid;
                    for (int i = 0; i <= 100; ++i)
                        grid.push_back(interpolated_quantile(pooled, static_cast<double>(i) / 100.0));
                    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
                    for (const auto* pg : group) curves.push_back(connectivity_profile(pg->graph, grid));
                }

                AggregatedCurves agg = aggregate_profiles(curves);
                for (std::size_t i = 0; i < agg.thresholds.size(); ++i) {
                    csv += sanitize_label(slices.periods[p].label);
                    csv += ',';
                    csv += format_weight(agg.thresholds[i]);
                    csv += ',';
                    csv += format_weight(agg.mean_c[i]);
                    csv += ',';
                    csv += format_weight(agg.median_c[i]);
                    csv += ',';
                    csv += std::to_string(agg.series_count);
                    csv += '\n';
                }
                any = true;
            }
            if (any) bundle.write(std::string("aggregate_") + network_choice_name(kind) + ".csv", csv);
        }

        // ---- indicators --------------------------------------------------
        std::vector<IndicatorRow> rows;
        for (const auto& specialism : specialisms) {
            for (std::size_t p = 0; p < slices.periods.size(); ++p) {
                std::vector<std::size_t> slice;
                for (std::size_t r : slices.slices[p])
                    if (resolved.records[r].specialism == specialism) slice.push_back(r);
                if (slice.empty()) continue;
                rows.push_back(descriptive_stats(resolved, slice, specialism, slices.periods[p].label,
                                                 config.price_window_years));
            }
        }
        bundle.write("indicators.csv", indicators_csv(rows));

        // ---- manifest ----------------------------------------------------
        ordered_json manifest;
        manifest["tool"] = "bibcouple";
        manifest["version"] = kVersion;
        const std::string cfg_text = config_json(config).dump(2);
        manifest["config"] = config_json(config);
        manifest["config_hash"] = fnv1a64_hex(cfg_text);
        manifest["input_checksum"] = fnv1a64_hex(input_bytes);
        ordered_json outputs = ordered_json::object();
        for (const auto& [name, hash] : bundle.hashes()) outputs[name] = hash;
        manifest["outputs"] = std::move(outputs);
        const std::string manifest_text = manifest.dump(2) + "\n";
        bundle.write("manifest.json", manifest_text);

        PipelineResult result;
        result.files_written = bundle.names();
        result.manifest_hash = fnv1a64_hex(manifest_text);
        return result;
    } catch (...) {
        bundle.rollback();
        throw;
    }
}

}  // namespace bibcouple
