#include "wildkey/intent.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "wildkey/errors.hpp"
#include "wildkey/text.hpp"

namespace wildkey {

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::dictionary_hit: return "dictionary_hit";
        case Provenance::spellcheck_top: return "spellcheck_top";
        case Provenance::unresolved: return "unresolved";
    }
    return "unresolved";
}

Dictionary parse_dictionary(const std::string& text, const std::string& language) {
    Dictionary dict;
    dict.language = language;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::size_t tab = line.find('\t');
        std::string word = tab == std::string::npos ? line : line.substr(0, tab);
        std::int64_t freq = 1;
        if (tab != std::string::npos) {
            try {
                freq = std::stoll(line.substr(tab + 1));
            } catch (const std::exception&) {
                throw ConfigError("dictionary: bad frequency in line: " + line);
            }
        }
        if (freq < 0) throw ConfigError("dictionary: negative frequency: " + line);
        if (!word.empty()) dict.entries[lowercase(word)] = freq;
    }
    if (dict.entries.empty()) throw ConfigError("dictionary: no entries");
    return dict;
}

Dictionary load_dictionary(const std::string& path, const std::string& language) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open dictionary: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dictionary(buf.str(), language);
}

bool lookup(const Dictionary& dict, const std::string& word) {
    if (word.empty()) return false;
    return dict.entries.count(lowercase(word)) > 0;
}

int damerau_levenshtein(const std::string& a, const std::string& b, int limit) {
    std::vector<char32_t> u = decode_utf8(a);
    std::vector<char32_t> v = decode_utf8(b);
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    if (std::abs(n - m) > limit) return limit + 1;

    const int inf = limit + 1;
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n) + 1,
                                    std::vector<int>(static_cast<std::size_t>(m) + 1, inf));
    for (int i = 0; i <= n; ++i) {
        if (i <= limit) d[i][0] = i;
    }
    for (int j = 0; j <= m; ++j) {
        if (j <= limit) d[0][j] = j;
    }
    for (int i = 1; i <= n; ++i) {
        int lo = std::max(1, i - limit);
        int hi = std::min(m, i + limit);
        int row_best = inf;
        for (int j = lo; j <= hi; ++j) {
            int cost = u[i - 1] == v[j - 1] ? 0 : 1;
            int best = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
            if (i > 1 && j > 1 && u[i - 1] == v[j - 2] && u[i - 2] == v[j - 1]) {
                best = std::min(best, d[i - 2][j - 2] + 1);
            }
            d[i][j] = std::min(best, inf);
            row_best = std::min(row_best, d[i][j]);
        }
        if (row_best >= inf) return inf;
    }
    return std::min(d[n][m], inf);
}

std::vector<std::string> suggest(const Dictionary& dict,
                                 const std::vector<std::string>& context,
                                 const std::string& word, int k, int max_distance) {
    (void)context;  // reserved for sentence-context re-ranking
    if (word.empty() || k <= 0) return {};
    const std::string needle = lowercase(word);

    struct Candidate {
        int distance;
        std::int64_t frequency;
        const std::string* word;
    };
    std::vector<Candidate> candidates;
    for (const auto& [entry, freq] : dict.entries) {
        int dist = damerau_levenshtein(needle, entry, max_distance);
        if (dist <= max_distance) candidates.push_back({dist, freq, &entry});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        if (a.frequency != b.frequency) return a.frequency > b.frequency;
        return *a.word < *b.word;
    });
    std::vector<std::string> out;
    for (const Candidate& c : candidates) {
        if (static_cast<int>(out.size()) == k) break;
        out.push_back(*c.word);
    }
    return out;
}

std::string IntentResult::sentence() const {
    std::string out;
    for (std::size_t i = 0; i < intent_words.size(); ++i) {
        if (i > 0) out += ' ';
        out += intent_words[i].word;
    }
    return out;
}

IntentResult infer_intent(const Dictionary& dict, const std::string& transcribed,
                          int max_distance, int max_suggestions) {
    IntentResult result;
    std::vector<std::string> context;
    for (const std::string& token : split_words(transcribed)) {
        TokenParts parts = strip_affixes(token);
        IntentWord iw;
        if (!parts.core.empty() && lookup(dict, parts.core)) {
            iw.word = token;  // typed casing preserved
            iw.provenance = Provenance::dictionary_hit;
        } else if (!parts.core.empty()) {
            std::vector<std::string> top =
                suggest(dict, context, parts.core, max_suggestions, max_distance);
            if (!top.empty()) {
                iw.word = parts.prefix + top.front() + parts.suffix;
                iw.provenance = Provenance::spellcheck_top;
            } else {
                iw.word = token;
                iw.provenance = Provenance::unresolved;
            }
        } else {
            iw.word = token;  // punctuation-only token
            iw.provenance = Provenance::unresolved;
        }
        context.push_back(iw.word);
        result.intent_words.push_back(std::move(iw));
    }
    return result;
}

double validate_intent(const std::string& target, const IntentResult& inferred) {
    std::vector<std::string> target_words = split_words(target);
    const std::size_t n = target_words.size();
    const std::size_t m = inferred.intent_words.size();
    const std::size_t denom = std::max(n, m);
    if (denom == 0) return 1.0;
    std::size_t matches = 0;
    for (std::size_t i = 0; i < std::min(n, m); ++i) {
        if (target_words[i] == inferred.intent_words[i].word) ++matches;
    }
    return static_cast<double>(matches) / static_cast<double>(denom);
}

}  // namespace wildkey
