#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace zsat {

// Minimal SHA-256 (FIPS 180-4). Kept in-tree so the shared library stays
// free of crypto-library runtime dependencies.
class Sha256 {
 public:
  Sha256();
  void update(const void* data, size_t len);
  // Finalizes and returns the 64-char lowercase hex digest. One-shot use.
  std::string hex_digest();

 private:
  void process_block(const uint8_t* block);

  uint32_t state_[8];
  uint64_t total_len_ = 0;
  uint8_t buffer_[64];
  size_t buffer_len_ = 0;
};

std::string sha256_hex(std::string_view data);

}  // namespace zsat
