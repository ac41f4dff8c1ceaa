#pragma once

#include "boulder/basis.hpp"
#include "boulder/certify.hpp"
#include "boulder/chambers.hpp"
#include "boulder/corpus.hpp"
#include "boulder/error.hpp"
#include "boulder/exact.hpp"
#include "boulder/indicators.hpp"
#include "boulder/partitions.hpp"
#include "boulder/report.hpp"
#include "boulder/verifiers.hpp"
#include "boulder/workspace.hpp"
