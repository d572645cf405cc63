#include "twistlab/cache.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

namespace twistlab {

namespace {

const char MAGIC[4] = {'T', 'W', 'L', '1'};

void put_u32(std::vector<unsigned char>& out, u32 v) {
    for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void put_u64(std::vector<unsigned char>& out, u64 v) {
    for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}

void put_f64(std::vector<unsigned char>& out, double d) {
    u64 bits;
    std::memcpy(&bits, &d, 8);
    put_u64(out, bits);
}

struct Reader {
    std::vector<unsigned char> bytes;
    std::size_t pos = 0;

    explicit Reader(const std::string& path) {
        if (!std::filesystem::exists(path))
            fail(ErrorCode::CacheMiss, "cache file not found: " + path);
        std::ifstream in(path, std::ios::binary);
        bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }

    void need(std::size_t n, const char* what) {
        if (pos + n > bytes.size())
            fail(ErrorCode::ChecksumMismatch, std::string("cache truncated reading ") + what);
    }
    u32 get_u32() {
        need(4, "u32");
        u32 v = 0;
        for (int i = 0; i < 4; ++i) v |= u32(bytes[pos + i]) << (8 * i);
        pos += 4;
        return v;
    }
    u64 get_u64() {
        need(8, "u64");
        u64 v = 0;
        for (int i = 0; i < 8; ++i) v |= u64(bytes[pos + i]) << (8 * i);
        pos += 8;
        return v;
    }
    double get_f64() {
        u64 bits = get_u64();
        double d;
        std::memcpy(&d, &bits, 8);
        return d;
    }
};

void write_with_checksum(const std::string& path, std::vector<unsigned char>& body) {
    put_u64(body, fnv1a64(body.data(), body.size()));
    auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::CacheMiss, "cannot open cache file for writing: " + path);
    out.write(reinterpret_cast<const char*>(body.data()), std::streamsize(body.size()));
}

std::vector<unsigned char> header(CacheKind kind, u64 count) {
    std::vector<unsigned char> out(MAGIC, MAGIC + 4);
    out.push_back(static_cast<unsigned char>(kind));
    put_u64(out, count);
    return out;
}

// validates magic/version and checksum, positions the reader at the payload
CacheKind open_and_check(Reader& r, u64& count) {
    r.need(4 + 1 + 8, "header");
    if (std::memcmp(r.bytes.data(), "TWL", 3) != 0)
        fail(ErrorCode::BadMagic, "not a twistlab cache file");
    if (r.bytes[3] != '1')
        fail(ErrorCode::VersionUnsupported, "unsupported cache version");
    if (r.bytes.size() < 8 + 13)
        fail(ErrorCode::ChecksumMismatch, "cache file too short");
    u64 stored = 0;
    for (int i = 0; i < 8; ++i) stored |= u64(r.bytes[r.bytes.size() - 8 + i]) << (8 * i);
    if (stored != fnv1a64(r.bytes.data(), r.bytes.size() - 8))
        fail(ErrorCode::ChecksumMismatch, "cache checksum mismatch");
    r.pos = 4;
    unsigned char kind = r.bytes[r.pos++];
    count = r.get_u64();
    if (kind < 1 || kind > 3)
        fail(ErrorCode::VersionUnsupported, "unknown cache payload kind");
    return static_cast<CacheKind>(kind);
}

} // namespace

u64 fnv1a64(const unsigned char* data, std::size_t len) {
    u64 h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= data[i];
        h *= 1099511628211ULL;
    }
    return h;
}

void cache_store_integers(const std::string& path, const std::vector<BigInt>& values) {
    auto body = header(CacheKind::IntegerTable, values.size());
    for (const BigInt& v : values) {
        body.push_back(v.sign() < 0 ? 0xFF : 0x00);
        auto mag = v.magnitude_bytes();
        put_u32(body, u32(mag.size()));
        body.insert(body.end(), mag.begin(), mag.end());
    }
    write_with_checksum(path, body);
}

void cache_store_complex(const std::string& path, const std::vector<cplx>& values) {
    auto body = header(CacheKind::ComplexTable, values.size());
    for (const cplx& z : values) {
        put_f64(body, z.real());
        put_f64(body, z.imag());
    }
    write_with_checksum(path, body);
}

void cache_store_floats(const std::string& path, const std::vector<double>& values) {
    auto body = header(CacheKind::FloatTable, values.size());
    for (double d : values) put_f64(body, d);
    write_with_checksum(path, body);
}

std::vector<BigInt> cache_load_integers(const std::string& path) {
    Reader r(path);
    u64 count = 0;
    if (open_and_check(r, count) != CacheKind::IntegerTable)
        fail(ErrorCode::VersionUnsupported, "cache kind mismatch (expected integer table)");
    std::vector<BigInt> out;
    out.reserve(count);
    for (u64 i = 0; i < count; ++i) {
        r.need(1, "sign");
        int sign = r.bytes[r.pos++] == 0xFF ? -1 : 1;
        u32 len = r.get_u32();
        r.need(len, "magnitude");
        std::vector<unsigned char> mag(r.bytes.begin() + std::ptrdiff_t(r.pos),
                                       r.bytes.begin() + std::ptrdiff_t(r.pos + len));
        r.pos += len;
        out.push_back(BigInt::from_magnitude_bytes(mag, sign));
    }
    return out;
}

std::vector<cplx> cache_load_complex(const std::string& path) {
    Reader r(path);
    u64 count = 0;
    if (open_and_check(r, count) != CacheKind::ComplexTable)
        fail(ErrorCode::VersionUnsupported, "cache kind mismatch (expected complex table)");
    std::vector<cplx> out;
    out.reserve(count);
    for (u64 i = 0; i < count; ++i) {
        double re = r.get_f64();
        double im = r.get_f64();
        out.emplace_back(re, im);
    }
    return out;
}

std::vector<double> cache_load_floats(const std::string& path) {
    Reader r(path);
    u64 count = 0;
    if (open_and_check(r, count) != CacheKind::FloatTable)
        fail(ErrorCode::VersionUnsupported, "cache kind mismatch (expected float table)");
    std::vector<double> out;
    out.reserve(count);
    for (u64 i = 0; i < count; ++i) out.push_back(r.get_f64());
    return out;
}

CacheInfo cache_info(const std::string& path) {
    Reader r(path);
    if (r.bytes.size() < 21) fail(ErrorCode::BadMagic, "cache file too short");
    if (std::memcmp(r.bytes.data(), "TWL", 3) != 0)
        fail(ErrorCode::BadMagic, "not a twistlab cache file");
    if (r.bytes[3] != '1') fail(ErrorCode::VersionUnsupported, "unsupported cache version");
    CacheInfo info{};
    info.kind = static_cast<CacheKind>(r.bytes[4]);
    r.pos = 5;
    info.count = r.get_u64();
    info.stored_checksum = 0;
    for (int i = 0; i < 8; ++i)
        info.stored_checksum |= u64(r.bytes[r.bytes.size() - 8 + i]) << (8 * i);
    info.checksum_ok =
        info.stored_checksum == fnv1a64(r.bytes.data(), r.bytes.size() - 8);
    return info;
}

bool cache_exists(const std::string& path) { return std::filesystem::exists(path); }

} // namespace twistlab
