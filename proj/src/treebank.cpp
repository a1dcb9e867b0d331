#include "treecross/treebank.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>
#include <zlib.h>

#include "treecross/error.hpp"
#include "treecross/kernels.hpp"
#include "treecross/random_lab.hpp"
#include "treecross/theory.hpp"

namespace treecross::treebank {

namespace {

class PlainLineReader : public LineReader {
  public:
    explicit PlainLineReader(std::istream& in) : in_(in) {}
    bool next_line(std::string& line) override {
        if (!std::getline(in_, line)) return false;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    }

  private:
    std::istream& in_;
};

// zlib's gz layer reads gzip and plain files alike, so one reader covers
// both file kinds.
class GzLineReader : public LineReader {
  public:
    explicit GzLineReader(const std::string& path) {
        file_ = gzopen(path.c_str(), "rb");
        if (!file_) throw Error("IoError", "cannot open " + path);
    }
    ~GzLineReader() override {
        if (file_) gzclose(file_);
    }
    bool next_line(std::string& line) override {
        line.clear();
        char buf[4096];
        bool got_any = false;
        while (gzgets(file_, buf, sizeof buf)) {
            got_any = true;
            line += buf;
            if (!line.empty() && line.back() == '\n') {
                line.pop_back();
                if (!line.empty() && line.back() == '\r') line.pop_back();
                return true;
            }
        }
        return got_any;  // final line without newline
    }

  private:
    gzFile file_ = nullptr;
};

std::vector<std::string> split_columns(const std::string& line) {
    std::vector<std::string> cols;
    if (line.find('\t') != std::string::npos) {
        std::size_t start = 0;
        for (;;) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                cols.push_back(line.substr(start));
                break;
            }
            cols.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
    } else {
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) cols.push_back(tok);
    }
    return cols;
}

bool parse_int(const std::string& s, int& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    long value = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        value = value * 10 + (s[i] - '0');
        if (value > 1'000'000'000L) return false;
    }
    out = static_cast<int>(value);
    return true;
}

bool is_punct_form(const std::string& form) {
    if (form.empty()) return false;
    for (char ch : form)
        if (!std::ispunct(static_cast<unsigned char>(ch))) return false;
    return true;
}

/// Validates head links and produces the undirected tree: exactly one root,
/// no cycles. Sets skipped_reason on failure.
void finish_sentence(SentenceRecord& rec, const ParseOptions& options) {
    const int n = static_cast<int>(rec.tokens.size());
    if (n == 0) {
        rec.skipped_reason = "NoTokens";  // only range/empty-node lines present
        return;
    }

    int root = 0, root_count = 0;
    for (const Token& tok : rec.tokens) {
        if (tok.head == 0) {
            root = tok.id;
            ++root_count;
        } else if (tok.head < 1 || tok.head > n) {
            rec.skipped_reason = "MissingHead";
            return;
        }
    }
    if (root_count > 1) {
        rec.skipped_reason = "MultipleRoots";
        return;
    }
    if (root_count == 0) {
        // with no root every token has a head, so a head cycle must exist
        rec.skipped_reason = "CycleDetected";
        return;
    }

    // walk head chains; every token must reach the root without revisits
    std::vector<int> state(n + 1, 0);  // 0 unseen, 1 on current path, 2 done
    state[root] = 2;
    for (int start = 1; start <= n; ++start) {
        int v = start;
        std::vector<int> path;
        while (state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            v = rec.tokens[v - 1].head;
        }
        if (state[v] == 1) {
            rec.skipped_reason = "CycleDetected";
            return;
        }
        for (int u : path) state[u] = 2;
    }

    std::vector<char> keep(n + 1, 1);
    if (options.drop_punct) {
        for (const Token& tok : rec.tokens)
            if (tok.upos == "PUNCT" || is_punct_form(tok.form)) keep[tok.id] = 0;
    }

    std::vector<int> relabel(n + 1, 0);
    int kept = 0;
    for (int v = 1; v <= n; ++v)
        if (keep[v]) relabel[v] = ++kept;
    if (kept == 0) {
        rec.skipped_reason = "PunctRemovalDisconnects";
        return;
    }

    std::vector<Edge> edges;
    edges.reserve(kept - 1);
    for (const Token& tok : rec.tokens) {
        if (tok.head == 0) continue;
        if (!keep[tok.id] || !keep[tok.head]) continue;
        edges.push_back({relabel[tok.id], relabel[tok.head]});
    }

    try {
        rec.tree = Tree::build(kept, std::move(edges));
    } catch (const Error&) {
        // punctuation removal is the only remaining way to lose tree-ness
        rec.skipped_reason = "PunctRemovalDisconnects";
        return;
    }
    rec.natural = LinearArrangement::identity(kept);
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char ch : field) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::unique_ptr<LineReader> make_line_reader(std::istream& in) {
    return std::make_unique<PlainLineReader>(in);
}

std::unique_ptr<LineReader> open_input(const std::string& path) {
    return std::make_unique<GzLineReader>(path);
}

ConllReader::ConllReader(std::unique_ptr<LineReader> lines, ParseOptions options)
    : lines_(std::move(lines)), options_(options) {}

bool ConllReader::next(SentenceRecord& record) {
    while (!done_) {
        record = SentenceRecord{};
        std::string line;
        bool in_sentence = false;
        std::string failure;
        int content_lines = 0;

        for (;;) {
            if (!lines_->next_line(line)) {
                done_ = true;
                break;
            }
            if (line.empty()) {
                if (in_sentence) break;  // sentence terminator
                continue;                 // leading blank lines
            }
            in_sentence = true;
            if (line[0] == '#') {
                // pick up "# sent_id = X" when present
                std::size_t eq = line.find('=');
                if (eq != std::string::npos &&
                    line.find("sent_id") != std::string::npos && record.sentence_id.empty()) {
                    std::size_t start = line.find_first_not_of(" \t", eq + 1);
                    if (start != std::string::npos)
                        record.sentence_id = line.substr(start);
                }
                continue;
            }
            ++content_lines;
            if (!failure.empty()) continue;  // drain the bad sentence

            auto cols = split_columns(line);
            const std::string& id_col = cols[0];
            if (id_col.find('-') != std::string::npos) continue;  // multiword range
            if (id_col.find('.') != std::string::npos) continue;  // empty node

            Token tok;
            if (!parse_int(id_col, tok.id) || tok.id != static_cast<int>(record.tokens.size()) + 1) {
                failure = "NonIntegerIndex";
                continue;
            }
            if (cols.size() < 7) {
                failure = "MissingHead";
                continue;
            }
            tok.form = cols[1];
            if (cols.size() >= 4) tok.upos = cols[3];
            if (!parse_int(cols[6], tok.head)) {
                failure = "MissingHead";
                continue;
            }
            record.tokens.push_back(std::move(tok));
        }

        if (!in_sentence && done_) return false;
        if (content_lines == 0) {
            if (done_) return false;
            continue;  // comment-only block
        }

        ++sentence_counter_;
        if (record.sentence_id.empty())
            record.sentence_id = "s" + std::to_string(sentence_counter_);
        if (!failure.empty()) {
            record.skipped_reason = failure;
            return true;
        }
        finish_sentence(record, options_);
        return true;
    }
    return false;
}

SentenceStats sentence_stats(const SentenceRecord& rec) {
    if (rec.skipped())
        throw Error("Skipped", rec.sentence_id + ": " + rec.skipped_reason);

    const Tree& tree = *rec.tree;
    const LinearArrangement& natural = *rec.natural;

    SentenceStats stats;
    stats.sentence_id = rec.sentence_id;
    stats.n = tree.n();
    stats.k2_moment = tree.degree_second_moment();
    stats.c_pairs = c_pairs(tree);
    stats.c_expected = expected_crossings(tree);

    kernels::CandidatePairs pairs(tree);
    kernels::EdgeTable edge_table(tree);
    stats.c_observed = kernels::count_crossings(pairs, natural.data());
    stats.planar = stats.c_observed == 0;
    stats.mean_d_observed =
        tree.n() >= 2 ? Rat(kernels::total_distance(edge_table, natural.data()), tree.n() - 1)
                      : Rat(0);
    stats.e_d = tree.n() >= 2 ? expected_mean_distance(tree.n()) : Rat(0);
    stats.ratio_defined = stats.c_expected > 0;
    if (stats.ratio_defined) stats.ratio_c = Rat(stats.c_observed) / stats.c_expected;
    return stats;
}

static const char* kCsvHeader =
    "sentence_id,n,k2_num,k2_den,C,EC_num,EC_den,Cpairs,meand_num,meand_den,"
    "Ed_num,Ed_den,planar,skipped_reason";

CorpusSummary corpus_report(ConllReader& reader, std::ostream& csv_out,
                            const ReportOptions& options) {
    CorpusSummary summary;
    summary.mc_enabled = options.mc_samples > 0;
    summary.mc_samples = options.mc_samples;
    summary.mc_seed = options.mc_seed;

    csv_out << kCsvHeader << "\n";

    double sum_var_c = 0.0;
    SentenceRecord rec;
    while (reader.next(rec)) {
        ++summary.sentences;
        if (rec.skipped()) {
            ++summary.skipped;
            ++summary.skipped_by_reason[rec.skipped_reason];
            csv_out << csv_quote(rec.sentence_id) << ",,,,,,,,,,,,," << rec.skipped_reason
                    << "\n";
            continue;
        }
        ++summary.parsed;
        SentenceStats stats = sentence_stats(rec);
        csv_out << csv_quote(stats.sentence_id) << "," << stats.n << ","
                << stats.k2_moment.numerator() << "," << stats.k2_moment.denominator() << ","
                << stats.c_observed << "," << stats.c_expected.numerator() << ","
                << stats.c_expected.denominator() << "," << stats.c_pairs.numerator() << ","
                << stats.mean_d_observed.numerator() << ","
                << stats.mean_d_observed.denominator() << "," << stats.e_d.numerator() << ","
                << stats.e_d.denominator() << "," << (stats.planar ? "true" : "false")
                << ",\n";

        auto& bucket = summary.per_n[stats.n];
        ++bucket.count;
        bucket.sum_k2 += stats.k2_moment;
        bucket.sum_c += stats.c_observed;
        bucket.sum_ec += stats.c_expected;
        summary.total_c_observed += stats.c_observed;
        summary.total_c_expected += stats.c_expected;

        if (summary.mc_enabled && rec.tree->n() >= 2) {
            McEstimate est = estimate_expected_crossings(
                *rec.tree, options.mc_samples, derive_seed(options.mc_seed, summary.sentences));
            double sigma = est.std_error * std::sqrt(static_cast<double>(est.samples));
            summary.mc_sigma_c.emplace_back(stats.sentence_id, sigma);
            sum_var_c += sigma * sigma;
        }
    }

    if (summary.mc_enabled && sum_var_c > 0) {
        double diff = static_cast<double>(summary.total_c_observed) -
                      to_double(summary.total_c_expected);
        summary.z_total = diff / std::sqrt(sum_var_c);
    }
    return summary;
}

std::string CorpusSummary::to_json() const {
    nlohmann::json j;
    j["sentences"] = sentences;
    j["parsed"] = parsed;
    j["skipped"] = skipped;
    j["skipped_by_reason"] = skipped_by_reason;
    nlohmann::json per;
    for (const auto& [n, bucket] : per_n) {
        nlohmann::json b;
        b["count"] = bucket.count;
        b["mean_k2"] = to_double(bucket.sum_k2 / static_cast<std::int64_t>(bucket.count));
        b["mean_C"] = static_cast<double>(bucket.sum_c) / static_cast<double>(bucket.count);
        b["mean_EC"] = to_double(bucket.sum_ec / static_cast<std::int64_t>(bucket.count));
        per[std::to_string(n)] = b;
    }
    j["per_n"] = per;
    j["total_C_observed"] = total_c_observed;
    j["total_EC"] = to_fraction_string(total_c_expected);
    j["total_EC_value"] = to_double(total_c_expected);
    if (mc_enabled) {
        nlohmann::json mc;
        mc["samples"] = mc_samples;
        mc["seed"] = mc_seed;
        mc["z_total"] = z_total;
        nlohmann::json per_sentence = nlohmann::json::array();
        for (const auto& [id, sigma] : mc_sigma_c)
            per_sentence.push_back({{"sentence_id", id}, {"sigma_C", sigma}});
        mc["per_sentence"] = per_sentence;
        j["mc_dispersion"] = mc;
    }
    return j.dump(2);
}

void encode_conll(const Tree& t, int root, std::ostream& out, const std::string& sentence_id) {
    if (root < 1 || root > t.n())
        throw Error("LabelOutOfRange", "root " + std::to_string(root));

    // heads oriented away from the root
    std::vector<int> head(t.n() + 1, 0);
    std::vector<int> stack{root};
    std::vector<char> seen(t.n() + 1, 0);
    seen[root] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : t.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                head[w] = v;
                stack.push_back(w);
            }
    }

    if (!sentence_id.empty()) out << "# sent_id = " << sentence_id << "\n";
    for (int v = 1; v <= t.n(); ++v)
        out << v << "\tw" << v << "\t_\t_\t_\t_\t" << head[v] << "\t"
            << (head[v] == 0 ? "root" : "dep") << "\t_\t_\n";
    out << "\n";
}

}  // namespace treecross::treebank
