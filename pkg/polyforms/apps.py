from django.apps import AppConfig


class PolyformsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "polyforms"
