#!/usr/bin/python3

from .color import Color, notify  # noqa 401

color = Color()
