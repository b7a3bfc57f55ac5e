#include "bibcouple/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <json.hpp>

#include "bibcouple/errors.hpp"

namespace bibcouple {

namespace {

constexpr std::uint32_t kCodeSpace = 36 * 36 * 36;

// Three base-36 characters, least significant first, so any two distinct
// values below 36^3 differ somewhere in the first three characters. That
// keeps distinct synthetic works in distinct disambiguation blocks: the
// matcher requires an exact 3-character title prefix, so works can never
// merge by accident, while identical strings always do.
std::string work_code(std::uint32_t value) {
    static const char alphabet[] = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string code(3, '0');
    code[0] = alphabet[value % 36];
    code[1] = alphabet[(value / 36) % 36];
    code[2] = alphabet[(value / (36 * 36)) % 36];
    return code;
}

// std::mt19937_64 has a standardized output sequence; the derived draws
// below avoid std::uniform_*_distribution, whose results are
// implementation-defined, so corpora are byte-identical across platforms.
struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    std::uint64_t bounded(std::uint64_t n) { return engine() % n; }

    double uniform01() { return static_cast<double>(engine() >> 11) * 0x1.0p-53; }
};

// Zipf-like sampler over ranks 1..n with weight 1/rank.
class ZipfSampler {
  public:
    explicit ZipfSampler(std::uint32_t n) : cumulative_(n) {
        double total = 0.0;
        for (std::uint32_t r = 0; r < n; ++r) {
            total += 1.0 / static_cast<double>(r + 1);
            cumulative_[r] = total;
        }
    }

    std::uint32_t sample(Rng& rng) const {
        const double x = rng.uniform01() * cumulative_.back();
        auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), x);
        return static_cast<std::uint32_t>(it - cumulative_.begin());
    }

  private:
    std::vector<double> cumulative_;
};

std::vector<std::uint32_t> draw_distinct(Rng& rng, std::uint32_t pool, std::uint32_t count) {
    std::vector<std::uint32_t> indices(pool);
    std::iota(indices.begin(), indices.end(), 0u);
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::uint32_t>(rng.bounded(pool - i));
        std::swap(indices[i], indices[j]);
    }
    indices.resize(count);
    std::sort(indices.begin(), indices.end());
    return indices;
}

std::uint32_t shared_draws(double fraction, std::uint32_t refs) {
    return static_cast<std::uint32_t>(std::llround(fraction * static_cast<double>(refs)));
}

template <typename T>
std::vector<T> per_period(const nlohmann::ordered_json& j, const char* field, std::size_t n_periods) {
    if (!j.contains(field)) throw config_error(std::string("synth config missing '") + field + "'");
    const auto& v = j.at(field);
    std::vector<T> out;
    if (v.is_array()) {
        for (const auto& e : v) out.push_back(e.get<T>());
    } else {
        out.assign(n_periods, v.get<T>());
    }
    if (out.size() != n_periods)
        throw config_error(std::string("synth config '") + field + "' must have one entry per period");
    return out;
}

}  // namespace

void SynthConfig::validate() const {
    if (periods.empty()) throw config_error("synth config has no periods");
    const std::size_t n = periods.size();
    if (articles_per_period.size() != n || refs_per_article.size() != n || shared_pool_size.size() != n ||
        shared_draw_fraction.size() != n)
        throw config_error("synth config per-period fields must align with the period list");
    for (const auto& p : periods)
        if (p.start_year > p.end_year) throw config_error("synth period '" + p.label + "' has start after end");
    for (std::size_t p = 0; p < n; ++p) {
        const double f = shared_draw_fraction[p];
        if (!(f >= 0.0 && f <= 1.0)) throw config_error("shared_draw_fraction must lie in [0,1]");
        const std::uint32_t draws = shared_draws(f, refs_per_article[p]);
        if (draws > shared_pool_size[p])
            throw config_error("period '" + periods[p].label + "': shared pool (" +
                               std::to_string(shared_pool_size[p]) + ") smaller than the " +
                               std::to_string(draws) + " shared draws per article");
        if (draws > refs_per_article[p])
            throw config_error("shared draws exceed refs per article");
    }
    std::uint64_t works = 0;
    for (std::size_t p = 0; p < n; ++p) {
        works += static_cast<std::uint64_t>(shared_pool_size[p]) +
                 static_cast<std::uint64_t>(articles_per_period[p]) *
                     (refs_per_article[p] - shared_draws(shared_draw_fraction[p], refs_per_article[p]));
    }
    if (works > kCodeSpace)
        throw config_error("config needs " + std::to_string(works) + " distinct cited works; the code space holds " +
                           std::to_string(kCodeSpace));
    if (!(coauthor_probability >= 0.0 && coauthor_probability <= 1.0))
        throw config_error("coauthor_probability must lie in [0,1]");
    if (vocabulary_size == 0) throw config_error("vocabulary_size must be positive");
}

SynthConfig synth_config_from_json(const std::string& json_text) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw config_error("synth config is not a JSON object");
    SynthConfig c;
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("specialism")) c.specialism = j["specialism"].get<std::string>();
    if (j.contains("journal")) c.journal = j["journal"].get<std::string>();
    if (!j.contains("periods") || !j["periods"].is_array())
        throw config_error("synth config needs a 'periods' array");
    for (const auto& e : j["periods"]) {
        PeriodSpec p;
        p.label = e.at("label").get<std::string>();
        p.start_year = e.at("start").get<int>();
        p.end_year = e.at("end").get<int>();
        c.periods.push_back(std::move(p));
    }
    const std::size_t n = c.periods.size();
    c.articles_per_period = per_period<std::uint32_t>(j, "articles_per_period", n);
    c.refs_per_article = per_period<std::uint32_t>(j, "refs_per_article", n);
    c.shared_pool_size = per_period<std::uint32_t>(j, "shared_pool_size", n);
    c.shared_draw_fraction = per_period<double>(j, "shared_draw_fraction", n);
    if (j.contains("coauthor_probability")) c.coauthor_probability = j["coauthor_probability"].get<double>();
    if (j.contains("vocabulary_size")) c.vocabulary_size = j["vocabulary_size"].get<std::uint32_t>();
    if (j.contains("abstract_length")) c.abstract_length = j["abstract_length"].get<std::uint32_t>();
    c.validate();
    return c;
}

std::vector<PublicationRecord> generate_corpus(const SynthConfig& config) {
    config.validate();
    Rng rng(config.seed);
    ZipfSampler zipf(config.vocabulary_size);
    std::vector<PublicationRecord> records;

    auto vocab_token = [](std::uint32_t rank) { return "term" + std::to_string(rank); };

    // One global code counter keeps every synthetic work distinct across
    // periods, so resolved cluster counts equal true work counts.
    std::uint32_t next_code = 0;

    for (std::size_t p = 0; p < config.periods.size(); ++p) {
        const auto& period = config.periods[p];
        const std::uint32_t n_articles = config.articles_per_period[p];
        const std::uint32_t refs = config.refs_per_article[p];
        const std::uint32_t pool = config.shared_pool_size[p];
        const std::uint32_t draws = shared_draws(config.shared_draw_fraction[p], refs);
        const std::uint32_t author_pool = std::max(2u, n_articles / 3u);
        const std::uint32_t pool_base = next_code;
        next_code += pool;

        // Shared works get a fixed cited year so every draw emits the same
        // byte string and resolves to the same cluster.
        auto shared_ref = [&](std::uint32_t i) {
            const std::string code = work_code(pool_base + i);
            const int cited_year = period.start_year - 1 - static_cast<int>(i % 30u);
            return "Author " + code + ", " + std::to_string(cited_year) + ", " + code + " synthetic work";
        };

        for (std::uint32_t a = 0; a < n_articles; ++a) {
            PublicationRecord r;
            r.id = "p" + std::to_string(p) + "-a" + std::to_string(a);
            r.journal = config.journal;
            r.specialism = config.specialism;
            const int span = period.end_year - period.start_year + 1;
            r.year = period.start_year + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(span)));

            const std::uint32_t first = static_cast<std::uint32_t>(rng.bounded(author_pool));
            r.authors.push_back({"Fam" + work_code(first), ""});
            if (rng.uniform01() < config.coauthor_probability) {
                std::uint32_t second = static_cast<std::uint32_t>(rng.bounded(author_pool));
                if (second == first) second = (second + 1) % author_pool;
                r.authors.push_back({"Fam" + work_code(second), ""});
            }

            for (std::uint32_t i : draw_distinct(rng, pool, draws)) r.raw_references.push_back(shared_ref(i));
            for (std::uint32_t k = draws; k < refs; ++k) {
                const std::string code = work_code(next_code++);
                const int cited_year = r.year - static_cast<int>(rng.bounded(26));
                r.raw_references.push_back("Author " + code + ", " + std::to_string(cited_year) + ", " + code +
                                           " synthetic work");
            }

            std::string title = "synthetic study";
            for (int t = 0; t < 2; ++t) title += " " + vocab_token(zipf.sample(rng));
            r.title = std::move(title);

            if (config.abstract_length > 0) {
                std::string abstract;
                for (std::uint32_t t = 0; t < config.abstract_length; ++t) {
                    if (t > 0) abstract += ' ';
                    abstract += vocab_token(zipf.sample(rng));
                }
                r.abstract = std::move(abstract);
            }
            records.push_back(std::move(r));
        }
    }
    return records;
}

SynthConfig fragmentation_config(std::uint64_t seed) {
    SynthConfig c;
    c.seed = seed;
    c.periods = {
        {"1970-1979", 1970, 1979},
        {"1980-1989", 1980, 1989},
        {"1990-1999", 1990, 1999},
        {"2000-2009", 2000, 2009},
    };
    c.articles_per_period = {300, 300, 300, 300};
    c.refs_per_article = {20, 30, 40, 50};
    c.shared_draw_fraction = {0.8, 0.6, 0.4, 0.2};
    c.shared_pool_size = {1024, 810, 440, 154};
    c.coauthor_probability = 0.05;
    c.vocabulary_size = 2000;
    c.abstract_length = 80;
    return c;
}

}  // namespace bibcouple
