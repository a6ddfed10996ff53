#pragma once

#include "qdrinfeld/errors.hpp"
#include "qdrinfeld/scalar.hpp"
#include "qdrinfeld/parse.hpp"
#include "qdrinfeld/group.hpp"
#include "qdrinfeld/algebra.hpp"
#include "qdrinfeld/spec_io.hpp"
#include "qdrinfeld/fixtures.hpp"
#include "qdrinfeld/pbw.hpp"
#include "qdrinfeld/colorlie.hpp"
#include "qdrinfeld/linalg.hpp"
#include "qdrinfeld/uea.hpp"
#include "qdrinfeld/hopf.hpp"
#include "qdrinfeld/report.hpp"
