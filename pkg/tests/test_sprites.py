import pytest

from codestrip.errors import SpriteFormatError
from codestrip.sprites import BUILTIN_NAMES, find_reference, get, load_sprites


@pytest.fixture(scope="module")
def sprites():
    return load_sprites()


def test_bundled_set_has_fruit(sprites):
    assert "apple" in sprites.entries
    assert "banana" in sprites.entries
    assert get(sprites, "apple").strokes


def test_empty_file_keeps_builtins(tmp_path):
    path = tmp_path / "empty.ndjson"
    path.write_text("")
    loaded = load_sprites(path)
    assert set(loaded.entries) == set(BUILTIN_NAMES)
    assert loaded.categories() == ()


def test_single_point_stroke_rejected(tmp_path):
    path = tmp_path / "bad.ndjson"
    path.write_text('{"name":"dot","strokes":[[[0.5,0.5]]]}\n')
    with pytest.raises(SpriteFormatError, match="at least 2 points"):
        load_sprites(path)


def test_out_of_box_coordinates_rejected(tmp_path):
    path = tmp_path / "bad.ndjson"
    path.write_text('{"name":"big","strokes":[[[0.0,0.0],[1.5,1.0]]]}\n')
    with pytest.raises(SpriteFormatError, match=r"\[0, 1\]"):
        load_sprites(path)


def test_uppercase_name_rejected(tmp_path):
    path = tmp_path / "bad.ndjson"
    path.write_text('{"name":"Apple","strokes":[[[0.0,0.0],[1.0,1.0]]]}\n')
    with pytest.raises(SpriteFormatError, match="lowercase"):
        load_sprites(path)


def test_get_falls_back_to_labeled_placeholder(sprites):
    missing = get(sprites, "nonexistent-thing")
    assert missing.name == "placeholder"
    assert missing.label == "nonexistent-thing"
    assert get(sprites, "").name == "placeholder"


def test_get_is_case_insensitive(sprites):
    assert get(sprites, "Apple").name == "apple"


def test_all_coordinates_normalized(sprites):
    for sprite in sprites.entries.values():
        for stroke in sprite.strokes:
            assert len(stroke) >= 2
            for x, y in stroke:
                assert 0.0 <= x <= 1.0
                assert 0.0 <= y <= 1.0


def test_find_reference_scans_in_order(sprites):
    assert find_reference(sprites, ["my phone is dying"]) == "phone"
    assert find_reference(sprites, ["BATTERY", "90% of my phone"]) == "phone"
    assert find_reference(sprites, ["no match here"]) is None
    assert find_reference(sprites, []) is None


def test_find_reference_requires_word_boundary(sprites):
    assert find_reference(sprites, ["microphones everywhere"]) is None
    assert find_reference(sprites, ["the carpet"]) is None
    assert find_reference(sprites, ["a car!"]) == "car"
