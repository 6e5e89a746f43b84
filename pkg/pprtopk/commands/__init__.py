"""Команды CLI: каждый модуль регистрирует свой подпарсер через register(subparsers)"""
