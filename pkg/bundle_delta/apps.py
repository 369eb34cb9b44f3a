from django.apps import AppConfig


class BundleDeltaConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "bundle_delta"
