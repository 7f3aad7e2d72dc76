#pragma once

// Small GMP limb buffers come from per-thread free lists instead of malloc.
// GMP passes the block size to free, so blocks carry no header.  A block may
// be freed on another thread; it then joins that thread's list.

#include <gmp.h>

#include <cstdlib>
#include <cstring>
#include <vector>

namespace coha::detail {

class GmpPool {
 public:
  static constexpr size_t kGrain = 8, kMax = 64, kChunk = 1 << 16;

  static void* alloc(size_t n) {
    if (n > kMax) return checked(std::malloc(n));
    auto& p = local();
    size_t c = cls(n);
    if (void* b = p.free_[c]) {
      p.free_[c] = *static_cast<void**>(b);
      return b;
    }
    return p.carve(c);
  }

  static void release(void* b, size_t n) {
    if (n > kMax) return std::free(b);
    auto& p = local();
    size_t c = cls(n);
    *static_cast<void**>(b) = p.free_[c];
    p.free_[c] = b;
  }

  static void* resize(void* b, size_t old, size_t n) {
    if (old > kMax && n > kMax) return checked(std::realloc(b, n));
    if (old <= kMax && n <= kMax && cls(old) == cls(n)) return b;
    void* r = alloc(n);
    std::memcpy(r, b, old < n ? old : n);
    release(b, old);
    return r;
  }

  static bool install() {
    mp_set_memory_functions(alloc, resize, release);
    return true;
  }

 private:
  static size_t cls(size_t n) { return (n + kGrain - 1) / kGrain; }
  static void* checked(void* p) {
    if (!p) std::abort();
    return p;
  }
  static GmpPool& local() {
    thread_local GmpPool p;
    return p;
  }

  void* carve(size_t c) {
    size_t bytes = c * kGrain;
    if (left_ < bytes) {
      cur_ = static_cast<char*>(checked(std::malloc(kChunk)));
      left_ = kChunk;
    }
    void* b = cur_;
    cur_ += bytes;
    left_ -= bytes;
    return b;
  }

  void* free_[kMax / kGrain + 1] = {};
  char* cur_ = nullptr;
  size_t left_ = 0;
};

#ifndef COHA_NO_GMP_POOL
inline const bool gmp_pool_installed = GmpPool::install();
#endif

}  // namespace coha::detail
