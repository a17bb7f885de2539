#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace wildkey {

// Minimal ZIP container with stored (uncompressed) entries; enough for the
// per-user export archive. The reader exists for round-trip verification.

struct ZipEntry {
    std::string name;
    std::string data;

    bool operator==(const ZipEntry&) const = default;
};

std::uint32_t crc32(const std::string& data);

void write_zip(const std::string& path, const std::vector<ZipEntry>& entries);
std::vector<ZipEntry> read_zip(const std::string& path);

}  // namespace wildkey
