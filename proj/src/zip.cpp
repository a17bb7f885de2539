#include "wildkey/zip.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include "wildkey/errors.hpp"

namespace wildkey {

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        table[i] = c;
    }
    return table;
}

void put16(std::string& out, std::uint16_t v) {
    out += static_cast<char>(v & 0xFF);
    out += static_cast<char>((v >> 8) & 0xFF);
}

void put32(std::string& out, std::uint32_t v) {
    out += static_cast<char>(v & 0xFF);
    out += static_cast<char>((v >> 8) & 0xFF);
    out += static_cast<char>((v >> 16) & 0xFF);
    out += static_cast<char>((v >> 24) & 0xFF);
}

std::uint16_t get16(const std::string& s, std::size_t off) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(s[off]) |
                                      (static_cast<unsigned char>(s[off + 1]) << 8));
}

std::uint32_t get32(const std::string& s, std::size_t off) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[off])) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 1])) << 8) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 2])) << 16) |
           (static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 3])) << 24);
}

}  // namespace

std::uint32_t crc32(const std::string& data) {
    static const std::array<std::uint32_t, 256> table = make_crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    for (unsigned char byte : data) c = table[(c ^ byte) & 0xFF] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

void write_zip(const std::string& path, const std::vector<ZipEntry>& entries) {
    std::string out;
    std::string central;
    for (const ZipEntry& e : entries) {
        const std::uint32_t offset = static_cast<std::uint32_t>(out.size());
        const std::uint32_t crc = crc32(e.data);
        const std::uint32_t size = static_cast<std::uint32_t>(e.data.size());
        const std::uint16_t name_len = static_cast<std::uint16_t>(e.name.size());

        put32(out, 0x04034B50u);  // local file header
        put16(out, 20);           // version needed
        put16(out, 0);            // flags
        put16(out, 0);            // method: stored
        put16(out, 0);            // mod time
        put16(out, 0x21);         // mod date (1980-01-01)
        put32(out, crc);
        put32(out, size);
        put32(out, size);
        put16(out, name_len);
        put16(out, 0);  // extra len
        out += e.name;
        out += e.data;

        put32(central, 0x02014B50u);  // central directory header
        put16(central, 20);           // version made by
        put16(central, 20);           // version needed
        put16(central, 0);
        put16(central, 0);
        put16(central, 0);
        put16(central, 0x21);
        put32(central, crc);
        put32(central, size);
        put32(central, size);
        put16(central, name_len);
        put16(central, 0);  // extra
        put16(central, 0);  // comment
        put16(central, 0);  // disk
        put16(central, 0);  // internal attrs
        put32(central, 0);  // external attrs
        put32(central, offset);
        central += e.name;
    }

    const std::uint32_t cd_offset = static_cast<std::uint32_t>(out.size());
    out += central;
    put32(out, 0x06054B50u);  // end of central directory
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint16_t>(entries.size()));
    put16(out, static_cast<std::uint16_t>(entries.size()));
    put32(out, static_cast<std::uint32_t>(central.size()));
    put32(out, cd_offset);
    put16(out, 0);

    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw PersistenceError("cannot open zip for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    f.flush();
    if (!f) throw PersistenceError("zip write failed: " + path);
}

std::vector<ZipEntry> read_zip(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw PersistenceError("cannot open zip: " + path);
    std::string data((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());

    // locate end-of-central-directory
    if (data.size() < 22) throw PersistenceError("zip too small: " + path);
    std::size_t eocd = std::string::npos;
    for (std::size_t i = data.size() - 22 + 1; i-- > 0;) {
        if (get32(data, i) == 0x06054B50u) {
            eocd = i;
            break;
        }
    }
    if (eocd == std::string::npos) throw PersistenceError("zip: no central directory: " + path);

    const std::uint16_t count = get16(data, eocd + 10);
    std::size_t pos = get32(data, eocd + 16);
    std::vector<ZipEntry> entries;
    for (std::uint16_t i = 0; i < count; ++i) {
        if (get32(data, pos) != 0x02014B50u) throw PersistenceError("zip: bad central header");
        const std::uint32_t size = get32(data, pos + 24);
        const std::uint16_t name_len = get16(data, pos + 28);
        const std::uint16_t extra_len = get16(data, pos + 30);
        const std::uint16_t comment_len = get16(data, pos + 32);
        const std::uint32_t local_off = get32(data, pos + 42);
        const std::string name = data.substr(pos + 46, name_len);

        if (get32(data, local_off) != 0x04034B50u) throw PersistenceError("zip: bad local header");
        const std::uint16_t lname = get16(data, local_off + 26);
        const std::uint16_t lextra = get16(data, local_off + 28);
        const std::size_t data_off = local_off + 30 + lname + lextra;
        entries.push_back({name, data.substr(data_off, size)});
        pos += 46u + name_len + extra_len + comment_len;
    }
    return entries;
}

}  // namespace wildkey
