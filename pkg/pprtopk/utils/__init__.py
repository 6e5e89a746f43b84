# pprtopk/utils/__init__.py
"""Утилиты"""
