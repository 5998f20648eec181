#pragma once

#include "classnum/algebra.hpp"
#include "classnum/analysis.hpp"
#include "classnum/asymptotics.hpp"
#include "classnum/bounds.hpp"
#include "classnum/corpus.hpp"
#include "classnum/curves.hpp"
#include "classnum/divisors.hpp"
#include "classnum/errors.hpp"
#include "classnum/galois_field.hpp"
#include "classnum/interval.hpp"
#include "classnum/pipeline.hpp"
#include "classnum/report.hpp"
#include "classnum/towers.hpp"
#include "classnum/verify.hpp"
#include "classnum/zeta.hpp"
