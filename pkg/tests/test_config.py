"""Tests pour l'analyse des fichiers de configuration."""

import pytest

import sys
import os
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wgagliardo import Command, ConfigError, parse_config


BBM_MINIMAL = """\
[run]
command = bbm

[domain]
kind = interval
lower = 0
upper = 1

[function]
name = linear
"""


class TestParseConfig:
    """Tests pour parse_config."""

    def test_minimal_bbm_defaults(self):
        """Un fichier minimal reçoit les valeurs par défaut documentées."""
        config = parse_config(BBM_MINIMAL)
        assert config.command == Command.BBM
        assert config.p == 2.0
        assert config.alpha == 0.0 and config.beta == 0.0
        assert config.schedule == pytest.approx([0.8, 0.9, 0.95, 0.975, 0.9875])
        assert config.engine is None
        assert config.seed == 0
        assert config.samples == 200_000
        assert config.format == "json"
        assert config.build_domain().dimension == 1
        assert config.build_function().name == "linear"

    def test_beta_defaults_to_alpha(self):
        """beta absent vaut alpha."""
        config = parse_config(BBM_MINIMAL + "\n[parameters]\nalpha = 0.25\n")
        assert config.beta == 0.25
        assert config.explicit == ("alpha",)

    def test_command_override(self):
        """La commande passée en argument remplace [run] command et son calendrier."""
        config = parse_config(BBM_MINIMAL.replace("command = bbm", "command = seminorm"), command="bbm")
        assert config.command == Command.BBM
        assert config.schedule is not None

    def test_explicit_schedule(self):
        """Un calendrier explicite est conservé."""
        config = parse_config(BBM_MINIMAL + "\n[parameters]\nschedule = 0.9, 0.95, 0.975\n")
        assert config.schedule == [0.9, 0.95, 0.975]

    def test_regime_violation(self):
        """alpha = 1.5 en dimension 1 n'est pas dans le régime DV-range."""
        text = BBM_MINIMAL + "\n[parameters]\nalpha = 1.5\nregime = DV-range\n"
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.key == "regime"
        assert info.value.lineno == 14
        assert "DV-range" in str(info.value)

    def test_regime_satisfied(self):
        """Paramètres conformes au régime demandé."""
        config = parse_config(BBM_MINIMAL + "\n[parameters]\nalpha = 0.2\nregime = DV-range\n")
        assert config.regime == "DV-range"

    def test_duplicate_key(self):
        """Une clé dupliquée est signalée avec son nom et sa ligne."""
        text = BBM_MINIMAL + "\n[parameters]\np = 2\np = 3\n"
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.key == "p"
        assert info.value.lineno == 14
        assert "ligne 14" in str(info.value)

    def test_unknown_key(self):
        """Clé inconnue dans un bloc connu."""
        with pytest.raises(ConfigError) as info:
            parse_config(BBM_MINIMAL + "\n[parameters]\ntemperature = 3\n")
        assert info.value.key == "temperature"
        assert info.value.lineno == 13

    def test_unknown_block(self):
        """Bloc inconnu."""
        with pytest.raises(ConfigError):
            parse_config(BBM_MINIMAL + "\n[output]\npath = x\n")

    def test_unknown_command(self):
        """Commande inconnue."""
        with pytest.raises(ConfigError) as info:
            parse_config("[run]\ncommand = solve\n")
        assert info.value.lineno == 2

    def test_missing_command(self):
        """[run] command est obligatoire sans commande imposée."""
        with pytest.raises(ConfigError):
            parse_config("[parameters]\np = 2\n")

    def test_missing_domain(self):
        """bbm exige un bloc [domain]."""
        with pytest.raises(ConfigError):
            parse_config("[run]\ncommand = bbm\n\n[function]\nname = linear\n")

    def test_out_of_range_order(self):
        """s = 1 est refusé avec sa ligne."""
        with pytest.raises(ConfigError) as info:
            parse_config(BBM_MINIMAL.replace("command = bbm", "command = seminorm") + "\n[parameters]\ns = 1\n")
        assert info.value.key == "s"
        assert info.value.lineno == 13

    def test_invalid_number(self):
        """Un décimal mal formé est refusé."""
        with pytest.raises(ConfigError):
            parse_config(BBM_MINIMAL + "\n[parameters]\np = deux\n")

    def test_dimension_mismatch(self):
        """Domaine et fonction de dimensions différentes."""
        text = BBM_MINIMAL.replace("name = linear", "name = bump\ndimension = 2")
        with pytest.raises(ConfigError):
            parse_config(text)

    def test_continuity_grid(self):
        """La grille du balayage se lit en triplets séparés par des points-virgules."""
        text = BBM_MINIMAL.replace("command = bbm", "command = continuity")
        text += "\n[parameters]\ngrid = 0.5, 0, 0; 0.6, 0.1, 0.1\n"
        config = parse_config(text)
        assert config.grid == [(0.5, 0.0, 0.0), (0.6, 0.1, 0.1)]
        with pytest.raises(ConfigError):
            parse_config(BBM_MINIMAL.replace("command = bbm", "command = continuity"))

    def test_constants_needs_no_blocks(self):
        """La commande constants se suffit de [run]."""
        config = parse_config("", command="constants")
        assert config.command == Command.CONSTANTS
        assert config.dimensions == [1, 2, 3]


class TestConfigHash:
    """Tests pour l'empreinte de configuration."""

    def test_stable(self):
        """Deux analyses du même texte donnent la même empreinte."""
        assert parse_config(BBM_MINIMAL).config_hash() == parse_config(BBM_MINIMAL).config_hash()

    def test_seed_changes_hash(self):
        """La graine fait partie de l'empreinte."""
        base = parse_config(BBM_MINIMAL)
        assert base.with_overrides(seed=7).config_hash() != base.config_hash()

    def test_output_path_excluded(self):
        """Le chemin de sortie n'entre pas dans l'empreinte."""
        base = parse_config(BBM_MINIMAL)
        assert base.with_overrides(out="result.json").config_hash() == base.config_hash()

    def test_resolved_contents(self):
        """La configuration résolue contient les blocs et les paramètres."""
        resolved = parse_config(BBM_MINIMAL).resolved()
        assert resolved["command"] == "bbm"
        assert resolved["domain"]["kind"] == "interval"
        assert resolved["parameters"]["schedule"] == pytest.approx([0.8, 0.9, 0.95, 0.975, 0.9875])
