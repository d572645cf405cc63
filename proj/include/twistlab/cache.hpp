// cache.hpp -- binary table cache.
//
// Layout: magic "TWL1" | 1-byte kind | u64-le record count | payload |
// u64-le FNV-1a checksum over all preceding bytes.
// Kinds: 1 = integer coefficient table (records: sign byte, u32-le byte
// length, little-endian magnitude), 2 = complex trace table (two f64-le
// per record), 3 = float coefficient table (one f64-le per record).
#pragma once

#include "twistlab/bigint.hpp"
#include "twistlab/common.hpp"

#include <string>
#include <vector>

namespace twistlab {

enum class CacheKind : unsigned char {
    IntegerTable = 1,
    ComplexTable = 2,
    FloatTable = 3,
};

u64 fnv1a64(const unsigned char* data, std::size_t len);

void cache_store_integers(const std::string& path, const std::vector<BigInt>& values);
void cache_store_complex(const std::string& path, const std::vector<cplx>& values);
void cache_store_floats(const std::string& path, const std::vector<double>& values);

std::vector<BigInt> cache_load_integers(const std::string& path);
std::vector<cplx> cache_load_complex(const std::string& path);
std::vector<double> cache_load_floats(const std::string& path);

struct CacheInfo {
    CacheKind kind;
    u64 count;
    u64 stored_checksum;
    bool checksum_ok;
};

CacheInfo cache_info(const std::string& path);

bool cache_exists(const std::string& path);

} // namespace twistlab
