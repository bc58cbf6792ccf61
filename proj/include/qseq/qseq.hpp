#pragma once

#include "qseq/error.hpp"
#include "qseq/gf2poly.hpp"
#include "qseq/irreducibility.hpp"
#include "qseq/qtransform.hpp"
#include "qseq/recsplit.hpp"
#include "qseq/seqgen.hpp"
#include "qseq/thetagraph.hpp"
#include "qseq/verify.hpp"
