#include "wildkey/phrases.hpp"

namespace wildkey {

const std::vector<std::string>& builtin_phrases() {
    static const std::vector<std::string> phrases = {
        "the quick brown fox jumps over the lazy dog",
        "a warm cup of tea helps me think",
        "we walked along the river before sunset",
        "please send the report by early morning",
        "the train arrives at nine every day",
        "she plays the piano with great skill",
        "fresh bread smells wonderful in the kitchen",
        "the meeting moved to the large room",
        "he found his keys under the table",
        "children love stories about brave knights",
        "the garden needs water twice a week",
        "music fills the house on quiet evenings",
        "they planned a short trip to the coast",
        "the old clock still keeps perfect time",
        "snow covered the hills late in november",
        "good ideas often arrive without warning",
        "the cat sleeps on the warm window ledge",
        "we should review the notes before class",
        "bright colors make the poster easy to read",
        "the baker starts work before the sun rises",
    };
    return phrases;
}

}  // namespace wildkey
