#pragma once

#include "plogic/algorithm.hpp"
#include "plogic/audit.hpp"
#include "plogic/certificate.hpp"
#include "plogic/classical.hpp"
#include "plogic/description.hpp"
#include "plogic/engine.hpp"
#include "plogic/parser.hpp"
#include "plogic/rad.hpp"
#include "plogic/syntax.hpp"
#include "plogic/truth.hpp"
