#pragma once

#include <gtest/gtest.h>

#include "qseq/error.hpp"

template <class Fn>
void expect_error(qseq::Errc code, Fn fn) {
  try {
    fn();
    FAIL() << "expected " << qseq::to_string(code);
  } catch (const qseq::Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}
