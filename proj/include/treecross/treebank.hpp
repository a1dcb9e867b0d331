#ifndef TREECROSS_TREEBANK_HPP
#define TREECROSS_TREEBANK_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "treecross/arrangement.hpp"
#include "treecross/rational.hpp"
#include "treecross/tree.hpp"

namespace treecross::treebank {

struct Token {
    int id = 0;          // 1-based position within the sentence
    std::string form;
    int head = 0;        // 0 = root
    std::string upos;    // column 4; "PUNCT" drives --drop-punct for CoNLL-U
};

/// One treebank sentence. Either tree+natural are set, or skipped_reason
/// names why the sentence was rejected (MultipleRoots, CycleDetected,
/// MissingHead, NonIntegerIndex, PunctRemovalDisconnects). tokens always
/// holds the raw sentence; under drop_punct the tree and natural arrangement
/// cover only the kept tokens, in sentence order.
struct SentenceRecord {
    std::string sentence_id;
    std::vector<Token> tokens;
    std::optional<Tree> tree;
    std::optional<LinearArrangement> natural;
    std::string skipped_reason;

    bool skipped() const { return !skipped_reason.empty(); }
};

struct ParseOptions {
    bool drop_punct = false;
};

/// Line source; hides plain-vs-gzip input.
class LineReader {
  public:
    virtual ~LineReader() = default;
    virtual bool next_line(std::string& line) = 0;
};

std::unique_ptr<LineReader> make_line_reader(std::istream& in);
/// Sniffs the gzip magic; falls back to plain text. Throws Error("IoError")
/// if the file cannot be opened.
std::unique_ptr<LineReader> open_input(const std::string& path);

/// Streaming CoNLL-X / CoNLL-U reader: tab- (or whitespace-) separated
/// columns, column 1 = index, column 2 = form, column 7 = HEAD; blank line
/// ends a sentence; '#' lines are comments (sent_id picked up when present).
/// Multiword-token ranges ("3-4") and empty nodes ("5.1") are skipped.
/// Defective sentences yield a record with skipped_reason set; the stream
/// itself never fails.
class ConllReader {
  public:
    ConllReader(std::unique_ptr<LineReader> lines, ParseOptions options);
    /// False once the input is exhausted.
    bool next(SentenceRecord& record);

  private:
    std::unique_ptr<LineReader> lines_;
    ParseOptions options_;
    std::uint64_t sentence_counter_ = 0;
    bool done_ = false;
};

/// Observed-versus-expected crossing statistics of one parsed sentence.
struct SentenceStats {
    std::string sentence_id;
    int n = 0;
    Rat k2_moment;
    std::int64_t c_observed = 0;
    Rat c_expected;
    Rat c_pairs;
    Rat mean_d_observed;
    Rat e_d;                    // (n+1)/3 (0 when the sentence has no edges)
    bool ratio_defined = false; // c_expected > 0
    Rat ratio_c;                // c_observed / c_expected when defined
    bool planar = true;
};

/// Throws Error("Skipped") when rec.skipped().
SentenceStats sentence_stats(const SentenceRecord& rec);

struct CorpusSummary {
    std::uint64_t sentences = 0;  // total seen
    std::uint64_t parsed = 0;
    std::uint64_t skipped = 0;
    std::map<std::string, std::uint64_t> skipped_by_reason;
    struct PerN {
        std::uint64_t count = 0;
        Rat sum_k2;
        std::int64_t sum_c = 0;
        Rat sum_ec;
    };
    std::map<int, PerN> per_n;
    std::int64_t total_c_observed = 0;
    Rat total_c_expected;
    // optional Monte Carlo dispersion of C (per sentence), on request
    bool mc_enabled = false;
    std::uint64_t mc_samples = 0;
    std::uint64_t mc_seed = 0;
    std::vector<std::pair<std::string, double>> mc_sigma_c;  // sentence_id, sd of C
    double z_total = 0.0;  // (sum C - sum E[C]) / sqrt(sum Var[C]), MC-based

    std::string to_json() const;
};

struct ReportOptions {
    // when mc_samples > 0, the summary carries per-sentence Monte Carlo
    // dispersion of C (random_lab), since no closed-form Var[C] is available
    std::uint64_t mc_samples = 0;
    std::uint64_t mc_seed = 0;
};

/// Writes one CSV row per sentence (header:
/// sentence_id,n,k2_num,k2_den,C,EC_num,EC_den,Cpairs,meand_num,meand_den,
/// Ed_num,Ed_den,planar,skipped_reason) and aggregates the summary.
CorpusSummary corpus_report(ConllReader& reader, std::ostream& csv_out,
                            const ReportOptions& options = {});

/// Encodes a tree as one CoNLL-U sentence with heads oriented away from
/// root. Forms default to "w<label>". Round-trips to the same undirected
/// edge set.
void encode_conll(const Tree& t, int root, std::ostream& out,
                  const std::string& sentence_id = "");

}  // namespace treecross::treebank

#endif
