"""FastAPI application exposing fixtures, classifiers and dominant dimensions"""
from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from datetime import datetime
from typing import Dict, Any
import logging

from . import __version__
from .config import settings
from .classify import classify_algebra, is_almost_cluster, is_almost_precluster, is_precluster
from .errors import ArthomError, DefectError, UnknownModuleError
from .fixtures import FIXTURE_ALIASES, SCENARIOS, verify_fixture
from .homology import dominant_dimension, rel_domdim
from .pathalg import parse_document
from .relhom import F_tilting_conditions, SubBifunctor
from .report import finalize, verify_assertions, verify_chain
from .repmod import load_modules, regular_module
from .models import (
    CheckRequest,
    ClassifierReport,
    ClassifyRequest,
    DomdimRequest,
    DomdimResponse,
    FixtureReport,
    HealthResponse,
    PropertyName,
)

# Configure logging
logging.basicConfig(
    level=settings.LOG_LEVEL,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# Create FastAPI app
app = FastAPI(
    title="arthom",
    description="Exact homological algebra for bound quiver algebras",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc"
)

# Add CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.get_cors_origins_list(),
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _http_error(e: ArthomError) -> HTTPException:
    """400 for caller errors, 500 for failed internal checks"""
    if isinstance(e, DefectError):
        logger.error(f"❌ Internal check failed: {e}")
        return HTTPException(status_code=500, detail=str(e))
    logger.info(f"Rejected request: {e}")
    return HTTPException(status_code=400, detail=str(e))


def _load(text: str):
    doc = parse_document(text, path_cap=settings.CAP_PATH_LENGTH)
    return doc.algebra, load_modules(doc)


# ============================================================================
# ENDPOINT 1: Health Check
# ============================================================================
@app.get("/health", response_model=HealthResponse, tags=["Health"])
async def health_check():
    """Service status, version and the available fixture scenarios"""
    return HealthResponse(
        status="healthy",
        version=__version__,
        timestamp=datetime.utcnow(),
        fixtures=list(SCENARIOS),
    )


# ============================================================================
# ENDPOINT 2: Fixtures
# ============================================================================
@app.get("/api/v1/fixtures", tags=["Fixtures"])
async def list_fixtures():
    return {"fixtures": list(SCENARIOS)}


@app.get("/api/v1/fixtures/{name}", response_model=FixtureReport, tags=["Fixtures"])
def run_fixture(name: str):
    """
    Run a golden scenario end to end

    Returns:
        FixtureReport with chained assertions
    """
    if name not in SCENARIOS and name not in FIXTURE_ALIASES:
        raise HTTPException(status_code=404, detail=f"Fixture not found: {name}")
    try:
        return verify_fixture(name)
    except ArthomError as e:
        raise _http_error(e)


# ============================================================================
# ENDPOINT 3: Classifiers
# ============================================================================
@app.post("/api/v1/classify", response_model=ClassifierReport, tags=["Classifiers"])
def classify(request: ClassifyRequest):
    """Almost n-minimal Auslander-Gorenstein verdict for the posted algebra"""
    try:
        alg, _ = _load(request.algebra)
        return classify_algebra(alg, request.n, settings.caps())
    except ArthomError as e:
        raise _http_error(e)


@app.post("/api/v1/check", response_model=ClassifierReport, tags=["Classifiers"])
def check(request: CheckRequest):
    """
    Test a declared module for one property

    - almost-precluster, precluster, almost-cluster for the given n
    - f-cotilting for F^M with M the module itself
    """
    try:
        alg, mods = _load(request.algebra)
        M = mods.get(request.module)
        if M is None:
            raise UnknownModuleError(f"unknown module: {request.module}")
        caps = settings.caps()
        if request.property == PropertyName.ALMOST_PRECLUSTER:
            return is_almost_precluster(M, request.n, caps)
        if request.property == PropertyName.PRECLUSTER:
            return is_precluster(M, request.n, caps)
        if request.property == PropertyName.ALMOST_CLUSTER:
            return is_almost_cluster(M, request.n, caps)
        F = SubBifunctor.upper(M)
        conditions = F_tilting_conditions(M, F, "cotilting", caps.codim)
        return finalize(ClassifierReport(
            verdict=all(c.ok for c in conditions),
            conditions=conditions,
            parameters={"module": M.label(), "functor": F.label()},
        ))
    except ArthomError as e:
        raise _http_error(e)


# ============================================================================
# ENDPOINT 4: Dominant Dimension
# ============================================================================
@app.post("/api/v1/domdim", response_model=DomdimResponse, tags=["Homology"])
def domdim(request: DomdimRequest):
    """Classical dominant dimension of A, or I-domdim A for a declared injective I"""
    try:
        alg, mods = _load(request.algebra)
        A = regular_module(alg)
        cap = settings.CAP_RESOLUTION
        if request.relative:
            I = mods.get(request.relative)
            if I is None:
                raise UnknownModuleError(f"unknown module: {request.relative}")
            d = rel_domdim(A, I, cap)
        else:
            d = dominant_dimension(A, cap)
        return DomdimResponse(value=d.value, infinite=d.is_infinite, cap=d.cap, relative=request.relative)
    except ArthomError as e:
        raise _http_error(e)


# ============================================================================
# ENDPOINT 5: Certificate Verification
# ============================================================================
@app.post("/api/v1/reports/verify", tags=["Reports"])
async def verify_report(report: Dict[str, Any]):
    """
    Recompute the certificate chain of a classifier or fixture report

    Returns:
        dict: valid flag, chain length and the first broken link if any
    """
    try:
        if "assertions" in report:
            return verify_assertions(FixtureReport(**report).assertions)
        return verify_chain(ClassifierReport(**report).conditions)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))


@app.get("/", tags=["Root"])
async def root():
    """Root endpoint with API information"""
    return {
        "name": "arthom",
        "version": __version__,
        "status": "running",
        "endpoints": {
            "health": "/health",
            "docs": "/docs",
            "fixtures": "/api/v1/fixtures",
            "fixture": "/api/v1/fixtures/{name}",
            "classify": "/api/v1/classify",
            "check": "/api/v1/check",
            "domdim": "/api/v1/domdim",
            "verify": "/api/v1/reports/verify",
        }
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(
        "arthom.main:app",
        host=settings.HOST,
        port=settings.PORT,
        log_level=settings.LOG_LEVEL.lower()
    )
