"""Pytest test suite for the HTTP endpoints"""
import pytest
from fastapi.testclient import TestClient

from arthom.fixtures import FIX_A2, FIX_C3, FIX_G, SCENARIOS
from arthom.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_health_endpoint(client):
    """Test 1: GET /health"""
    response = client.get("/health")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "healthy"
    assert data["fixtures"] == list(SCENARIOS)
    print("✅ Test passed: Health check endpoint")


def test_root_endpoint(client):
    """Test 2: GET /"""
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["endpoints"]["classify"] == "/api/v1/classify"
    print("✅ Test passed: Root endpoint")


def test_fixture_endpoints(client):
    """Test 3: GET /api/v1/fixtures and /api/v1/fixtures/{name}"""
    response = client.get("/api/v1/fixtures")
    assert response.json()["fixtures"] == list(SCENARIOS)
    response = client.get("/api/v1/fixtures/relative-domdim")
    assert response.status_code == 200
    data = response.json()
    assert data["ok"] is True
    assert data["digest"]
    assert client.get("/api/v1/fixtures/remark-4.4").json()["ok"] is True
    assert client.get("/api/v1/fixtures/nothing").status_code == 404
    print("✅ Test passed: Fixture endpoints")


def test_classify_endpoint(client):
    """Test 4: POST /api/v1/classify"""
    response = client.post("/api/v1/classify", json={"algebra": FIX_A2, "n": 0})
    assert response.status_code == 200
    data = response.json()
    assert data["verdict"] is True
    assert data["findings"]["gld"]["value"] == 1
    bad = client.post("/api/v1/classify", json={"algebra": "field Q\nvertices 1\narrow a : 1 -> 2\n", "n": 0})
    assert bad.status_code == 400
    assert client.post("/api/v1/classify", json={"algebra": FIX_A2, "n": -1}).status_code == 422
    print("✅ Test passed: Classify endpoint")


def test_check_endpoint(client):
    """Test 5: POST /api/v1/check"""
    payload = {"algebra": FIX_C3, "module": "M", "property": "almost-precluster", "n": 2}
    response = client.post("/api/v1/check", json=payload)
    assert response.status_code == 200
    assert response.json()["verdict"] is True
    payload["property"] = "precluster"
    assert client.post("/api/v1/check", json=payload).json()["verdict"] is False
    payload["module"] = "W"
    assert client.post("/api/v1/check", json=payload).status_code == 400
    print("✅ Test passed: Check endpoint")


def test_domdim_endpoint(client):
    """Test 6: POST /api/v1/domdim"""
    response = client.post("/api/v1/domdim", json={"algebra": FIX_G, "relative": "I"})
    assert response.status_code == 200
    assert response.json() == {"value": 2, "infinite": False, "cap": None, "relative": "I"}
    classical = client.post("/api/v1/domdim", json={"algebra": FIX_A2}).json()
    assert classical["value"] == 1
    print("✅ Test passed: Domdim endpoint")


def test_verify_endpoint(client):
    """Test 7: POST /api/v1/reports/verify"""
    payload = {"algebra": FIX_C3, "module": "M", "property": "almost-precluster", "n": 2}
    report = client.post("/api/v1/check", json=payload).json()
    result = client.post("/api/v1/reports/verify", json=report).json()
    assert result["valid"] is True
    report["conditions"][1]["detail"] = "edited"
    result = client.post("/api/v1/reports/verify", json=report).json()
    assert result["valid"] is False
    fixture = client.get("/api/v1/fixtures/translate-closure").json()
    assert client.post("/api/v1/reports/verify", json=fixture).json()["valid"] is True
    print("✅ Test passed: Verify endpoint")
