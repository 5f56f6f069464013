#pragma once

#include "twreal/error.hpp"
#include "twreal/linalg.hpp"
#include "twreal/algebra.hpp"
#include "twreal/triple.hpp"
#include "twreal/forms.hpp"
#include "twreal/conformal.hpp"
#include "twreal/family.hpp"
#include "twreal/distance.hpp"
#include "twreal/catalog.hpp"
#include "twreal/document.hpp"
