from django.apps import AppConfig


class DivgeomConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "divgeom"
