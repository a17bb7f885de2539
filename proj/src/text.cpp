#include "wildkey/text.hpp"

namespace wildkey {

std::string encode_utf8(char32_t cp) {
    std::string out;
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
    return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) out += encode_utf8(cp);
    return out;
}

std::vector<char32_t> decode_utf8(const std::string& s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        char32_t cp = 0;
        std::size_t len = 1;
        if (b < 0x80) {
            cp = b;
        } else if ((b >> 5) == 0x6) {
            cp = b & 0x1F;
            len = 2;
        } else if ((b >> 4) == 0xE) {
            cp = b & 0x0F;
            len = 3;
        } else if ((b >> 3) == 0x1E) {
            cp = b & 0x07;
            len = 4;
        } else {
            // stray continuation byte; keep as replacement to stay total
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        if (i + len > s.size()) {
            out.push_back(0xFFFD);
            break;
        }
        bool ok = true;
        for (std::size_t k = 1; k < len; ++k) {
            unsigned char c = static_cast<unsigned char>(s[i + k]);
            if ((c >> 6) != 0x2) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (c & 0x3F);
        }
        if (!ok) {
            out.push_back(0xFFFD);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

bool is_whitespace(char32_t cp) {
    switch (cp) {
        case U' ':
        case U'\t':
        case U'\n':
        case U'\r':
        case 0x0B:
        case 0x0C:
        case 0x00A0:
        case 0x1680:
        case 0x2028:
        case 0x2029:
        case 0x202F:
        case 0x205F:
        case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_letter(char32_t cp) {
    if ((cp >= U'a' && cp <= U'z') || (cp >= U'A' && cp <= U'Z')) return true;
    if (cp >= 0x00C0 && cp <= 0x024F) return cp != 0x00D7 && cp != 0x00F7;
    return false;
}

bool is_digit(char32_t cp) { return cp >= U'0' && cp <= U'9'; }

char32_t to_lower(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 32;
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 32;
    return cp;
}

std::string lowercase(const std::string& word) {
    std::vector<char32_t> cps = decode_utf8(word);
    for (char32_t& cp : cps) cp = to_lower(cp);
    return encode_utf8(cps);
}

std::vector<std::string> split_words(const std::string& text) {
    std::vector<std::string> words;
    std::vector<char32_t> cps = decode_utf8(text);
    std::vector<char32_t> cur;
    for (char32_t cp : cps) {
        if (is_whitespace(cp)) {
            if (!cur.empty()) {
                words.push_back(encode_utf8(cur));
                cur.clear();
            }
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) words.push_back(encode_utf8(cur));
    return words;
}

TokenParts strip_affixes(const std::string& token) {
    std::vector<char32_t> cps = decode_utf8(token);
    std::size_t begin = 0;
    std::size_t end = cps.size();
    while (begin < end && !is_letter(cps[begin]) && !is_digit(cps[begin])) ++begin;
    while (end > begin && !is_letter(cps[end - 1]) && !is_digit(cps[end - 1])) --end;
    TokenParts parts;
    parts.prefix = encode_utf8(std::vector<char32_t>(cps.begin(), cps.begin() + begin));
    parts.core = encode_utf8(std::vector<char32_t>(cps.begin() + begin, cps.begin() + end));
    parts.suffix = encode_utf8(std::vector<char32_t>(cps.begin() + end, cps.end()));
    return parts;
}

}  // namespace wildkey
