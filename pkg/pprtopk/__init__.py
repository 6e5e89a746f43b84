# pprtopk/__init__.py
# Указание, что директория pprtopk - это Python-пакет
