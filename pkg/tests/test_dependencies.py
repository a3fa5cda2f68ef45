import tempfile
import unittest
from pathlib import Path

from src.dependencies import get_model_service, load_served_model
from src.services.model_service import NO_MODEL_ERROR
from src.services.persistence_service import save_model
from src.settings.tsetlin_settings import TsetlinSettings
from tests.helpers import xor_rule_model


class TestGetModelService(unittest.TestCase):
    def tearDown(self):
        load_served_model.cache_clear()

    def test_no_model_path(self):
        service = get_model_service(TsetlinSettings(model_path=None))
        self.assertIsNone(service.model)
        self.assertEqual(service.summary().error, NO_MODEL_ERROR)

    def test_missing_model_file(self):
        service = get_model_service(TsetlinSettings(model_path="/nonexistent/model.json"))
        self.assertIsNone(service.model)
        self.assertIn("does not exist", service.load_error)

    def test_loads_and_caches_the_model(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = save_model(xor_rule_model(), Path(tmp) / "model.json")
            first = get_model_service(TsetlinSettings(model_path=str(path)))
            second = get_model_service(TsetlinSettings(model_path=str(path)))
        self.assertIsNotNone(first.model)
        self.assertIs(first.model, second.model)
        self.assertEqual(first.model.class_names, ["0", "1"])
