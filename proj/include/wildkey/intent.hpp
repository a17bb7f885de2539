#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wildkey {

// Dictionary plus edit-distance suggester standing in for the platform spell
// checker. Pluggable via the file format below; ranking is fully
// deterministic (distance, then frequency, then lexicographic).

struct Dictionary {
    std::map<std::string, std::int64_t> entries;  // lowercase word -> frequency
    std::string language = "en";

    bool operator==(const Dictionary&) const = default;
};

// Loads UTF-8 lines of `word<TAB>frequency`. Words are lowercased on load.
// Blank lines and lines starting with '#' are skipped.
Dictionary load_dictionary(const std::string& path, const std::string& language = "en");
Dictionary parse_dictionary(const std::string& text, const std::string& language = "en");

// Case-insensitive membership after lowercase normalization.
bool lookup(const Dictionary& dict, const std::string& word);

// Dictionary words within restricted Damerau-Levenshtein distance
// <= max_distance of `word`, ranked by (ascending distance, descending
// frequency, lexicographic), truncated to k. `context` holds the intent words
// inferred so far; reserved for re-ranking, currently unused.
std::vector<std::string> suggest(const Dictionary& dict,
                                 const std::vector<std::string>& context,
                                 const std::string& word, int k, int max_distance = 2);

enum class Provenance { dictionary_hit, spellcheck_top, unresolved };

const char* to_string(Provenance p);

struct IntentWord {
    std::string word;
    Provenance provenance = Provenance::dictionary_hit;

    bool operator==(const IntentWord&) const = default;
};

struct IntentResult {
    std::vector<IntentWord> intent_words;

    std::string sentence() const;
    bool operator==(const IntentResult&) const = default;
};

// Word-by-word intent inference over whitespace tokens. Leading/trailing
// punctuation is stripped for lookup and re-attached to the result; hits keep
// the typed casing, corrections take the dictionary casing.
IntentResult infer_intent(const Dictionary& dict, const std::string& transcribed,
                          int max_distance = 2, int max_suggestions = 5);

// Ratio of position-aligned equal words between target and inferred intent,
// denominator max of the two word counts. 1.0 when both are empty.
double validate_intent(const std::string& target, const IntentResult& inferred);

// Restricted Damerau-Levenshtein (adjacent transpositions cost 1), banded so
// calls with small limits stay cheap. Returns limit + 1 when the distance
// exceeds `limit`.
int damerau_levenshtein(const std::string& a, const std::string& b, int limit);

}  // namespace wildkey
