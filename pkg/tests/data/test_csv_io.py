import numpy as np
import pytest

from lblab.data import CsvSchema, load_csv, make_blobs, save_csv, synth_schema
from lblab.errors import InvalidInputError, ParseError
from tests.constants import TEMP_DIR


class TestLoadCsv:
    @pytest.fixture(autouse=True)
    def run_always(self, setup_temp_dir):
        pass

    def _write(self, text: str, name: str = "data.csv"):
        path = TEMP_DIR / name
        path.write_text(text)
        return path

    def test_well_formed(self):
        path = self._write("f1,f2,label\n0.5,1.5,1\n-1,2e-3,2\n3,4,2\n")
        dataset = load_csv(path)
        assert len(dataset) == 3
        assert dataset.sample_ids == ("row-1", "row-2", "row-3")
        np.testing.assert_array_equal(dataset.features, [[0.5, 1.5], [-1.0, 0.002], [3.0, 4.0]])
        assert dataset.labels.tolist() == [1, 2, 2]
        assert dataset.n_classes == 2

    def test_schema_columns(self):
        path = self._write("id,a,b,c,y\nx,1,2,3,1\nz,4,5,6,3\n")
        dataset = load_csv(path, CsvSchema(feature_columns=("c", "a"), label_column="y", id_column="id", n_classes=4))
        assert dataset.sample_ids == ("x", "z")
        np.testing.assert_array_equal(dataset.features, [[3.0, 1.0], [6.0, 4.0]])
        assert dataset.n_classes == 4

    def test_non_numeric_cell(self):
        path = self._write("f1,f2,label\n0.5,1.5,1\n0.1,abc,2\n")
        with pytest.raises(ParseError, match=r"row 3, column 'f2'") as error:
            load_csv(path)
        assert (error.value.row, error.value.column) == (3, "f2")

    def test_fractional_label(self):
        path = self._write("f1,label\n0.5,1.5\n")
        with pytest.raises(ParseError, match="label"):
            load_csv(path)

    def test_missing_column(self):
        path = self._write("f1,f2\n0.5,1.5\n")
        with pytest.raises(ParseError, match="'label'"):
            load_csv(path)

    def test_empty_file(self):
        with pytest.raises(ParseError):
            load_csv(self._write(""))

    def test_header_only(self):
        with pytest.raises(ParseError):
            load_csv(self._write("f1,label\n"))

    def test_ragged_row(self):
        path = self._write("f1,f2,label\n0.5,1.5,1\n0.1,2\n")
        with pytest.raises(ParseError):
            load_csv(path)

    def test_too_many_fields(self):
        path = self._write("f1,label\n0.5,1\n0.1,2,7,8\n")
        with pytest.raises(ParseError):
            load_csv(path)

    def test_missing_file(self):
        with pytest.raises(ParseError):
            load_csv(TEMP_DIR / "absent.csv")

    def test_invalid_utf8(self):
        path = TEMP_DIR / "data.csv"
        path.write_bytes(b"sample_id,f1,label\n\xff\xfe,1,1\n")
        with pytest.raises(ParseError, match="UTF-8"):
            load_csv(path, CsvSchema(id_column="sample_id"))

    def test_duplicate_ids(self):
        path = self._write("sample_id,f1,label\na,1,1\na,2,1\n")
        with pytest.raises(InvalidInputError, match="'a'"):
            load_csv(path, CsvSchema(id_column="sample_id"))


class TestSaveCsv:
    @pytest.fixture(autouse=True)
    def run_always(self, setup_temp_dir):
        pass

    def test_synth_file_reads_back(self):
        dataset = make_blobs(classes=3, dim=2, per_class=10, spread=0.4, label_noise_fraction=0.2, seed=3)
        path = TEMP_DIR / "blobs.csv"
        save_csv(dataset, path)
        assert path.read_text().splitlines()[0] == "sample_id,x0,x1,label,tag"
        loaded = load_csv(path, synth_schema())
        assert loaded.sample_ids == dataset.sample_ids
        assert loaded.difficulty_tags == dataset.difficulty_tags
        assert np.array_equal(loaded.labels, dataset.labels)
        assert np.array_equal(loaded.features, dataset.features)
